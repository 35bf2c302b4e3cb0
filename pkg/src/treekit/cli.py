"""Command-line entry point for treebank work.

Verbs: validate, stats, wordorder, eval, kappa, morph-eval, convert,
split, serve.  Exit codes: 0 on success, 1 when `validate` finds issues
or two annotations cannot be compared, 2 on usage and parse errors.
Reports are deterministic: same argv and inputs, same bytes out.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from treekit.analytics import (
    partition,
    split_by_section,
    treebank_stats,
    word_order_profile,
)
from treekit.conllu import Document, ParseError, parse_file, write_file
from treekit.evaluation import (
    EvaluationError,
    attachment_scores,
    cohen_kappa,
    deprel_sequences,
    morph_scores,
)
from treekit.morphology import AnalysisError, convert_lines
from treekit.validation import DEFAULT_SCHEMA, Schema, load_schema, validate_document


class _InputError(click.ClickException):
    """Bad input file or flag value; exits 2 like a usage error."""

    exit_code = 2


def _read(path: str) -> Document:
    try:
        return parse_file(path)
    except ParseError as err:
        raise _InputError(f"{path}: {err}") from err
    except OSError as err:
        raise _InputError(str(err)) from err


def _read_many(paths: tuple[str, ...]) -> Document:
    merged = Document()
    for path in paths:
        merged.sentences.extend(_read(path).sentences)
    return merged


def _schema_option(path: str | None) -> Schema:
    if path is None:
        return DEFAULT_SCHEMA
    try:
        return load_schema(path)
    except (OSError, ValueError) as err:
        raise _InputError(f"cannot load schema: {err}") from err


@click.group()
def main() -> None:
    """Parse, validate, edit, analyze and serve dependency treebanks."""


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--schema", "schema_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Vocabulary file overriding the built-in UPOS/DEPREL lists.")
def validate(files: tuple[str, ...], schema_path: str | None) -> None:
    """Check files against the annotation rules; exit 1 if issues are found."""
    schema = _schema_option(schema_path)
    total = 0
    for path in files:
        doc = _read(path)
        issues = validate_document(doc, schema)
        for issue in issues:
            prefix = f"{path}\t" if len(files) > 1 else ""
            click.echo(f"{prefix}{issue}")
        total += len(issues)
    click.echo(f"{total} issues")
    if total:
        sys.exit(1)


def _stats_lines(doc: Document, machine: bool, prefix: str = "") -> list[str]:
    report = treebank_stats(doc)
    if machine:
        lines = [
            f"{prefix}sentences={report.n_sentences}",
            f"{prefix}tokens={report.n_tokens}",
            f"{prefix}words={report.n_words}",
            f"{prefix}tokens_per_sentence={report.tokens_per_sentence}",
            f"{prefix}words_per_sentence={report.words_per_sentence}",
            f"{prefix}avg_arc_length={report.avg_arc_length}",
            f"{prefix}avg_arc_length_no_punct={report.avg_arc_length_no_punct}",
            f"{prefix}unique_upos={report.n_unique_upos}",
            f"{prefix}unique_features={report.n_unique_features}",
            f"{prefix}unique_deprels={report.n_unique_deprels}",
        ]
        for label, (count, pct) in report.deprel_distribution.items():
            lines.append(f"{prefix}deprel.{label}.count={count}")
            lines.append(f"{prefix}deprel.{label}.pct={pct:.2f}")
        return lines
    lines = [
        f"sentences: {report.n_sentences}",
        f"tokens: {report.n_tokens}",
        f"words: {report.n_words}",
        f"tokens per sentence: {report.tokens_per_sentence:.2f}",
        f"words per sentence: {report.words_per_sentence:.2f}",
        f"average arc length: {report.avg_arc_length:.2f}",
        f"average arc length, punctuation excluded: {report.avg_arc_length_no_punct:.2f}",
        f"unique UPOS tags: {report.n_unique_upos}",
        f"unique feature pairs: {report.n_unique_features}",
        f"unique deprels: {report.n_unique_deprels}",
        "",
        "deprel distribution:",
    ]
    width = max((len(label) for label in report.deprel_distribution), default=0)
    for label, (count, pct) in report.deprel_distribution.items():
        lines.append(f"  {label:<{width}}  {count:>7}  {pct:>6.2f}%")
    return lines


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--machine", is_flag=True, help="Emit key=value lines instead of the table.")
@click.option("--by-section", is_flag=True, help="One report per section inferred from sent_id prefixes.")
def stats(files: tuple[str, ...], machine: bool, by_section: bool) -> None:
    """Corpus counts, averages and the deprel distribution."""
    doc = _read_many(files)
    if not by_section:
        click.echo("\n".join(_stats_lines(doc, machine)))
        return
    blocks: list[str] = []
    for part in split_by_section(doc):
        if machine:
            blocks.append("\n".join(_stats_lines(part, True, prefix=f"{part.section}.")))
        else:
            blocks.append(f"section: {part.section}\n" + "\n".join(_stats_lines(part, False)))
    click.echo("\n\n".join(blocks))


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["triples-only", "pairs-and-triples"]),
              default="triples-only", show_default=True)
@click.option("--scope", type=click.Choice(["all-predicates", "main-clause-only"]),
              default="all-predicates", show_default=True)
@click.option("--machine", is_flag=True, help="Emit key=value lines.")
def wordorder(files: tuple[str, ...], mode: str, scope: str, machine: bool) -> None:
    """Count subject/object/predicate orderings across clauses."""
    profile = word_order_profile(_read_many(files), mode=mode, scope=scope)
    if machine:
        for pattern, (count, pct) in profile.counts.items():
            click.echo(f"wordorder.{pattern}.count={count}")
            click.echo(f"wordorder.{pattern}.pct={pct:.2f}")
        click.echo(f"wordorder.total={profile.total()}")
        return
    width = max((len(p) for p in profile.counts), default=5)
    for pattern, (count, pct) in profile.counts.items():
        click.echo(f"{pattern:<{width}}  {count:>7}  {pct:>6.2f}%")
    click.echo(f"{'total':<{width}}  {profile.total():>7}")


@main.command("eval")
@click.argument("gold", type=click.Path(exists=True, dir_okay=False))
@click.argument("pred", type=click.Path(exists=True, dir_okay=False))
@click.option("--ignore-punct", is_flag=True, help="Drop punctuation from both sides before scoring.")
@click.option("--machine", is_flag=True, help="Emit key=value lines.")
def eval_cmd(gold: str, pred: str, ignore_punct: bool, machine: bool) -> None:
    """Attachment scores of PRED against GOLD, words aligned by spans."""
    try:
        result = attachment_scores(_read(gold), _read(pred), ignore_punct=ignore_punct)
    except EvaluationError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    if machine:
        click.echo(f"gold_words={result.gold_words}")
        click.echo(f"pred_words={result.pred_words}")
        click.echo(f"aligned={result.aligned}")
        click.echo(f"uas_precision={result.uas_precision}")
        click.echo(f"uas_recall={result.uas_recall}")
        click.echo(f"uas_f1={result.uas_f1}")
        click.echo(f"las_precision={result.las_precision}")
        click.echo(f"las_recall={result.las_recall}")
        click.echo(f"las_f1={result.las_f1}")
        return
    click.echo(f"gold words: {result.gold_words}")
    click.echo(f"pred words: {result.pred_words}")
    click.echo(f"aligned: {result.aligned}")
    click.echo(f"UAS  precision {result.uas_precision:.4f}  recall {result.uas_recall:.4f}  f1 {result.uas_f1:.4f}")
    click.echo(f"LAS  precision {result.las_precision:.4f}  recall {result.las_recall:.4f}  f1 {result.las_f1:.4f}")


@main.command()
@click.argument("gold", type=click.Path(exists=True, dir_okay=False))
@click.argument("pred", type=click.Path(exists=True, dir_okay=False))
@click.option("--machine", is_flag=True, help="Emit key=value lines.")
def kappa(gold: str, pred: str, machine: bool) -> None:
    """Chance-corrected agreement over the two files' dependency labels."""
    try:
        g_labels, p_labels = deprel_sequences(_read(gold), _read(pred))
        value = cohen_kappa(g_labels, p_labels)
    except EvaluationError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    if machine:
        click.echo(f"kappa={value}")
        click.echo(f"labels={len(g_labels)}")
        return
    click.echo(f"kappa: {value:.4f} over {len(g_labels)} labels")


@main.command("morph-eval")
@click.argument("gold", type=click.Path(exists=True, dir_okay=False))
@click.argument("pred", type=click.Path(exists=True, dir_okay=False))
@click.option("--machine", is_flag=True, help="Emit key=value lines.")
def morph_eval(gold: str, pred: str, machine: bool) -> None:
    """Morphological feature agreement between two parallel files."""
    try:
        result = morph_scores(_read(gold), _read(pred))
    except EvaluationError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    if machine:
        click.echo(f"words={result.words}")
        click.echo(f"token_accuracy={result.token_accuracy}")
        click.echo(f"precision={result.precision}")
        click.echo(f"recall={result.recall}")
        click.echo(f"f1={result.f1}")
        return
    click.echo(f"words: {result.words}")
    click.echo(f"token accuracy: {result.token_accuracy:.4f}")
    click.echo(f"feature precision {result.precision:.4f}  recall {result.recall:.4f}  f1 {result.f1:.4f}")


@main.command()
@click.argument("analyses", type=click.Path(exists=True, dir_okay=False))
@click.option("--drop-unknown", is_flag=True,
              help="Drop unrecognized tags with a warning instead of failing.")
def convert(analyses: str, drop_unknown: bool) -> None:
    """Turn morphological analyses, one per line, into lemma/UPOS/FEATS rows."""
    text = Path(analyses).read_text(encoding="utf-8")
    try:
        rows, warnings = convert_lines(text, on_unknown="drop" if drop_unknown else "error")
    except AnalysisError as err:
        raise _InputError(str(err)) from err
    for warning in warnings:
        click.echo(warning, err=True)
    for row in rows:
        click.echo(row)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--ratios", default="0.8,0.1,0.1", show_default=True,
              help="train,dev,test fractions; must sum to 1.")
@click.option("--by-section", is_flag=True,
              help="Partition each sent_id-prefix section separately, then pool.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="Directory for the output files; defaults to the input's.")
def split(file: str, seed: int, ratios: str, by_section: bool, out_dir: str | None) -> None:
    """Write FILE-train/dev/test.conllu with a seeded, per-section draw."""
    try:
        parts = tuple(float(r) for r in ratios.split(","))
        if len(parts) != 3:
            raise ValueError("expected three comma-separated fractions")
    except ValueError as err:
        raise _InputError(f"bad --ratios: {err}") from err
    doc = _read(file)
    sections = split_by_section(doc) if by_section else [doc]
    try:
        train, dev, test = partition(sections, ratios=(parts[0], parts[1], parts[2]), seed=seed)
    except ValueError as err:
        raise _InputError(str(err)) from err
    source = Path(file)
    target = Path(out_dir) if out_dir else source.parent
    target.mkdir(parents=True, exist_ok=True)
    for name, part in (("train", train), ("dev", dev), ("test", test)):
        out_path = target / f"{source.stem}-{name}.conllu"
        write_file(part, str(out_path))
        click.echo(f"{name}: {len(part.sentences)} sentences -> {out_path}")


@main.command()
@click.option("--file", "file_", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Document to serve.")
@click.option("--port", type=int, default=8570, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--schema", "schema_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Vocabulary file overriding the built-in UPOS/DEPREL lists.")
@click.option("--static", "static_dir", type=click.Path(file_okay=False), default=None,
              help="Directory of UI files to serve at /.")
def serve(file_: str, port: int, host: str, schema_path: str | None, static_dir: str | None) -> None:
    """Serve the document over HTTP for the annotation workbench."""
    import uvicorn

    from treekit.service import create_app

    try:
        app = create_app(file_, schema=_schema_option(schema_path), static_dir=static_dir)
    except ParseError as err:
        raise _InputError(f"{file_}: {err}") from err
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()

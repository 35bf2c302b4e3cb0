"""Tools for parsing, validating, editing and analyzing CoNLL-U treebanks."""

__version__ = "0.1.0"

from treekit.conllu import (
    Document,
    FeatureSet,
    ParseError,
    Sentence,
    SerializationError,
    Token,
    parse_document,
    parse_feats,
    parse_file,
    serialize_document,
    write_file,
)

__all__ = [
    "Document",
    "FeatureSet",
    "ParseError",
    "Sentence",
    "SerializationError",
    "Token",
    "parse_document",
    "parse_feats",
    "parse_file",
    "serialize_document",
    "write_file",
]

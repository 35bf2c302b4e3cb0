// Validation strip, shown between the table and the tree. Issues never
// block anything; they are just painted after every payload refresh.
export function renderStrip(host, issues) {
    host.innerHTML = "";
    if (issues.length === 0) {
        host.className = "validation-strip clean";
        host.textContent = "no validation issues";
        return;
    }
    host.className = "validation-strip errors";
    const list = document.createElement("ul");
    for (const issue of issues) {
        const item = document.createElement("li");
        const where = issue.token ? `token ${issue.token}: ` : "";
        item.textContent = `${where}${issue.message}`;
        item.dataset.code = issue.code;
        list.appendChild(item);
    }
    host.appendChild(list);
}
// Transient messages (conflicts, network failures) share the strip.
export function renderNotice(host, text, onReload) {
    host.innerHTML = "";
    host.className = "validation-strip notice";
    host.appendChild(document.createTextNode(text));
    if (onReload) {
        const btn = document.createElement("button");
        btn.textContent = "reload";
        btn.className = "reload-btn";
        btn.addEventListener("click", onReload);
        host.appendChild(btn);
    }
}

/** DOM wiring for the explorer. Rendering is a pure function of the
 * fetched schema, the last query response, and the session state. */
import { EndpointUnreachable, SparqlError, fetchConcepts, fetchQueries, fetchSchema, runSparql } from "./api.js";
import { QuerySession, insertAtCursor, offsetAt, prefixLines } from "./session.js";
import { PAGE_SIZE, tablePage } from "./table.js";
import { buildTree, isLeaf, toggle, visibleRows } from "./tree.js";
function el(tag, className = "", text = "") {
    const node = document.createElement(tag);
    if (className)
        node.className = className;
    if (text)
        node.textContent = text;
    return node;
}
export async function start(root) {
    const state = {
        tree: [],
        queries: {},
        session: new QuerySession(),
        page: 0,
        pending: false,
    };
    root.innerHTML = "";
    const banner = el("div", "banner hidden");
    const sidebar = el("aside", "sidebar");
    const treeBox = el("div", "tree");
    const conceptsBox = el("div", "concepts");
    sidebar.append(el("h2", "", "Classes"), treeBox, conceptsBox);
    const main = el("main", "main");
    const controls = el("div", "controls");
    const picker = el("select", "picker");
    picker.append(new Option("canned queries…", ""));
    const runButton = el("button", "run", "Run");
    controls.append(picker, runButton);
    const editor = el("textarea", "editor");
    editor.rows = 10;
    editor.spellcheck = false;
    const errorBox = el("div", "error hidden");
    const resultsBox = el("div", "results");
    const pager = el("div", "pager hidden");
    main.append(controls, editor, errorBox, resultsBox, pager);
    root.append(banner, sidebar, main);
    // -- rendering -------------------------------------------------------
    function showBanner(message, retry) {
        banner.className = "banner";
        banner.innerHTML = "";
        banner.append(el("span", "", message));
        const button = el("button", "", "Retry");
        button.addEventListener("click", retry);
        banner.append(button);
    }
    function hideBanner() {
        banner.className = "banner hidden";
    }
    function renderTree() {
        treeBox.innerHTML = "";
        for (const { node, depth } of visibleRows(state.tree)) {
            const row = el("div", "tree-row");
            row.style.paddingLeft = `${depth * 14}px`;
            if (node.children.length > 0) {
                const arrow = el("span", "arrow", node.expanded ? "▾" : "▸");
                arrow.addEventListener("click", () => {
                    toggle(node);
                    renderTree();
                });
                row.append(arrow);
            }
            else {
                row.append(el("span", "arrow leaf", "·"));
            }
            const label = el("span", "tree-label", node.label);
            label.title = node.iri;
            label.addEventListener("click", () => onClassClick(node));
            row.append(label);
            treeBox.append(row);
        }
    }
    function renderConcepts(title, instances) {
        conceptsBox.innerHTML = "";
        conceptsBox.append(el("h3", "", title));
        if (instances.length === 0) {
            conceptsBox.append(el("p", "placeholder", "no instances"));
            return;
        }
        const list = el("ul");
        for (const name of instances) {
            const item = el("li", "", name);
            item.addEventListener("click", () => insertIntoEditor(name));
            list.append(item);
        }
        conceptsBox.append(list);
    }
    function renderError(message, line, column) {
        errorBox.className = "error";
        errorBox.textContent =
            line !== undefined ? `line ${line}, column ${column}: ${message}` : message;
        if (line !== undefined && column !== undefined) {
            const offset = offsetAt(editor.value, line, column);
            editor.focus();
            editor.setSelectionRange(offset, offset + 1);
        }
    }
    function clearError() {
        errorBox.className = "error hidden";
        errorBox.textContent = "";
    }
    function renderResults() {
        resultsBox.innerHTML = "";
        pager.className = "pager hidden";
        const result = state.session.lastResult;
        if (!result)
            return;
        const page = tablePage(result, state.page);
        const table = el("table", "grid");
        const head = el("tr");
        for (const name of page.columns) {
            head.append(el("th", "", `?${name}`));
        }
        table.append(head);
        for (const cells of page.rows) {
            const row = el("tr");
            for (const cell of cells) {
                const td = el("td", `cell ${cell.kind}`, cell.display);
                if (cell.full && cell.full !== cell.display) {
                    td.title = cell.full;
                    td.addEventListener("click", () => {
                        const expanded = td.classList.toggle("expanded");
                        td.textContent = expanded ? cell.full : cell.display;
                    });
                }
                row.append(td);
            }
            table.append(row);
        }
        resultsBox.append(table);
        resultsBox.append(el("p", "rowcount", `${page.totalRows} solution(s)`));
        if (page.pageCount > 1) {
            pager.className = "pager";
            pager.innerHTML = "";
            const prev = el("button", "", "‹ prev");
            const next = el("button", "", "next ›");
            prev.disabled = page.page === 0;
            next.disabled = page.page >= page.pageCount - 1;
            prev.addEventListener("click", () => {
                state.page -= 1;
                renderResults();
            });
            next.addEventListener("click", () => {
                state.page += 1;
                renderResults();
            });
            pager.append(prev, el("span", "", `page ${page.page + 1} / ${page.pageCount} (${PAGE_SIZE} rows per page)`), next);
        }
    }
    // -- behavior --------------------------------------------------------
    function insertIntoEditor(text) {
        const spliced = insertAtCursor(editor.value, editor.selectionStart ?? editor.value.length, text);
        editor.value = spliced.text;
        state.session.edit(spliced.text);
        editor.focus();
        editor.setSelectionRange(spliced.cursor, spliced.cursor);
    }
    async function onClassClick(node) {
        insertIntoEditor(node.label);
        if (isLeaf(node)) {
            try {
                const listing = await fetchConcepts(node.label);
                renderConcepts(listing.class, listing.instances);
            }
            catch (err) {
                renderConcepts(node.label, []);
            }
        }
    }
    picker.addEventListener("change", () => {
        const name = picker.value;
        if (!name)
            return;
        if (state.session.dirty && !window.confirm("Replace the edited query?")) {
            picker.value = state.session.selectedCanned ?? "";
            return;
        }
        state.session.setEditor(state.queries[name], name);
        editor.value = state.queries[name];
        clearError();
    });
    editor.addEventListener("input", () => {
        state.session.edit(editor.value);
    });
    runButton.addEventListener("click", async () => {
        if (state.pending || !editor.value.trim())
            return;
        state.pending = true;
        runButton.disabled = true;
        clearError();
        try {
            const result = await runSparql(editor.value);
            state.session.recordRun(editor.value, result);
            state.page = 0;
            renderResults();
            hideBanner();
        }
        catch (err) {
            if (err instanceof SparqlError) {
                renderError(err.detail.error, err.detail.line, err.detail.column);
            }
            else if (err instanceof EndpointUnreachable) {
                showBanner("Endpoint unreachable.", () => void bootstrap());
            }
            else {
                renderError(String(err));
            }
        }
        finally {
            state.pending = false;
            runButton.disabled = false;
        }
    });
    async function bootstrap() {
        try {
            const [schema, queries] = await Promise.all([fetchSchema(), fetchQueries()]);
            state.tree = buildTree(schema);
            state.queries = queries;
            hideBanner();
            renderTree();
            picker.innerHTML = "";
            picker.append(new Option("canned queries…", ""));
            for (const name of Object.keys(queries).sort()) {
                picker.append(new Option(name, name));
            }
            if (!editor.value && queries.q1) {
                const template = prefixLines(queries.q1);
                state.session.setEditor(template);
                editor.value = template;
            }
        }
        catch (err) {
            showBanner("Endpoint unreachable.", () => void bootstrap());
        }
    }
    await bootstrap();
}

"""
Analyse du sous-ensemble de syntaxe wiki utilisé par les modèles de pages
"""
import re

from utils.namespace_utils import STATUS_PAGES
from utils.slug_utils import is_external_target, normalize_link_target
from wiki_models import Block, InlineSpan, InternalLink, ListItem, TableCell, TableRow

LINK_RE = re.compile(r"\[\[(?P<target>[^\]|]*)(?:\|(?P<label>.*?))?\]\](?!\])")
HEADING_RE = re.compile(r"^\s*(={2,6})(?!=)\s*(.*?[^=\s].*?)\s*=+\s*$")
LIST_RE = re.compile(r"^( {2,}|\t+)([*-])\s*(.*)$")
TODO_RE = re.compile(r"^\[([ xX])\]\s*(.*)$")
QUOTE_RE = re.compile(r"^>+\s?(.*)$")

# Caractères de délimitation de la grammaire, absents du texte brut
MARKUP_CHARS = "=|^*[]>"
_MARKUP_TABLE = str.maketrans({c: " " for c in MARKUP_CHARS})
_SPACES = re.compile(r"\s+")


def parse_page(raw_text):
    """
    Découpe le texte d'une page en blocs.

    Fonction totale : toute ligne non reconnue finit dans un paragraphe.

    Args:
        raw_text (str): Texte brut de la page

    Returns:
        list: Liste de Block dans l'ordre du document
    """
    blocks = []
    # Groupe en cours : (type, lignes ou éléments)
    pending = {"kind": None, "items": []}

    def flush():
        kind, items = pending["kind"], pending["items"]
        if kind == "paragraph":
            blocks.append(Block(kind="paragraph", spans=parse_inline(" ".join(items))))
        elif kind == "blockquote":
            blocks.append(Block(kind="blockquote", spans=parse_inline(" ".join(items))))
        elif kind == "table":
            blocks.append(Block(kind="table", rows=tuple(items)))
        elif kind in ("unordered-list", "ordered-list"):
            blocks.append(Block(kind=kind, items=tuple(items)))
        pending["kind"], pending["items"] = None, []

    def push(kind, item):
        if pending["kind"] != kind:
            flush()
            pending["kind"] = kind
        pending["items"].append(item)

    for line in raw_text.splitlines():
        if not line.strip():
            flush()
            continue

        heading = HEADING_RE.match(line)
        if heading:
            flush()
            level = 7 - len(heading.group(1))
            blocks.append(Block(kind="heading", level=level, spans=parse_inline(heading.group(2))))
            continue

        stripped = line.lstrip(" ")
        if stripped[:1] in ("|", "^"):
            push("table", parse_table_row(stripped))
            continue

        item = LIST_RE.match(line)
        if item:
            indent, marker, content = item.groups()
            todo = TODO_RE.match(content)
            if todo:
                flush()
                blocks.append(Block(
                    kind="todo-item",
                    checked=todo.group(1) != " ",
                    spans=parse_inline(todo.group(2)),
                ))
                continue
            depth = max(1, len(indent.expandtabs(2)) // 2)
            kind = "unordered-list" if marker == "*" else "ordered-list"
            push(kind, ListItem(spans=parse_inline(content), depth=depth))
            continue

        quote = QUOTE_RE.match(line)
        if quote:
            push("blockquote", quote.group(1).strip())
            continue

        push("paragraph", line.strip())

    flush()
    return blocks


def parse_table_row(line):
    """
    Découpe une ligne de tableau en cellules.

    Le délimiteur qui précède une cellule fixe son type : '^' pour un
    en-tête, '|' sinon. Les '|' à l'intérieur d'un lien ne coupent pas.
    """
    line = line.rstrip()
    protected = [False] * len(line)
    for match in LINK_RE.finditer(line):
        for i in range(match.start(), match.end()):
            protected[i] = True

    cells = []
    header = line[0] == "^"
    start = 1
    for i in range(1, len(line)):
        if line[i] in "|^" and not protected[i]:
            cells.append(TableCell(spans=parse_inline(line[start:i].strip()), header=header))
            header = line[i] == "^"
            start = i + 1
    tail = line[start:].strip()
    if tail:
        cells.append(TableCell(spans=parse_inline(tail), header=header))
    return TableRow(cells=tuple(cells))


def parse_inline(text):
    """
    Découpe un texte en spans : texte simple, gras et liens.

    Un '**' sans partenaire reste du texte littéral.

    Args:
        text (str): Texte d'une ligne ou d'une cellule

    Returns:
        tuple: InlineSpan dans l'ordre du texte
    """
    pieces = []
    pos = 0
    for match in LINK_RE.finditer(text):
        if match.start() > pos:
            pieces.append(("text", text[pos:match.start()]))
        pieces.append(("link", match))
        pos = match.end()
    if pos < len(text):
        pieces.append(("text", text[pos:]))

    toggles = sum(value.count("**") for kind, value in pieces if kind == "text")
    usable = toggles - toggles % 2

    spans = []
    bold = False
    seen = 0
    for kind, value in pieces:
        if kind == "link":
            spans.append(_link_span(value, bold))
            continue
        for i, chunk in enumerate(value.split("**")):
            if i > 0:
                if seen < usable:
                    seen += 1
                    bold = not bold
                else:
                    chunk = "**" + chunk
            if chunk:
                spans.append(InlineSpan(kind="bold" if bold else "plain", text=chunk, bold=bold))
    return tuple(spans)


def _link_span(match, bold):
    target = match.group("target")
    label = (match.group("label") or "").strip()
    if len(label) > 4 and label.startswith("**") and label.endswith("**"):
        label = label[2:-2].strip()
        bold = True

    if is_external_target(target):
        url = target.strip()
        return InlineSpan(kind="external", text=label or url, bold=bold, link_label=label, url=url)

    page_id = normalize_link_target(target)
    if page_id is None:
        return InlineSpan(kind="bold" if bold else "plain", text=match.group(0), bold=bold)
    text = label or page_id.split(":")[-1].replace("-", " ")
    return InlineSpan(kind="link", text=text, bold=bold, link_target=page_id, link_label=label)


def _units(blocks):
    """Unités de voisinage pour les préfixes : élément de liste, cellule, bloc"""
    for block in blocks:
        if block.kind == "table":
            for row in block.rows:
                for cell in row.cells:
                    yield cell.spans
        elif block.items:
            for item in block.items:
                yield item.spans
        else:
            yield block.spans


def extract_links(blocks, source_id):
    """
    Liste les liens internes d'une page dans l'ordre du document.

    Un lien qui suit directement (blancs exceptés) un lien vers
    phd:bibliography:in-review ou to-review dans la même unité reçoit le
    préfixe correspondant.

    Args:
        blocks (list): Blocs produits par parse_page
        source_id (str): Identifiant de la page source

    Returns:
        list: Liste de InternalLink
    """
    links = []
    for spans in _units(blocks):
        pending = "none"
        for span in spans:
            if span.kind == "link":
                status = STATUS_PAGES.get(span.link_target)
                links.append(InternalLink(
                    source=source_id,
                    target=span.link_target,
                    label=span.link_label or "",
                    bold=span.bold,
                    prefix="none" if status else pending,
                ))
                pending = status or "none"
            elif span.kind == "external" or span.text.strip():
                pending = "none"
    return links


def clean_text(text):
    """Retire les délimiteurs de la grammaire et compacte les blancs"""
    return _SPACES.sub(" ", text.translate(_MARKUP_TABLE)).strip()


def spans_text(spans):
    return clean_text("".join(span.display_text for span in spans))


def block_text(block):
    if block.kind == "table":
        cells = (spans_text(cell.spans) for row in block.rows for cell in row.cells)
        return " ".join(c for c in cells if c)
    if block.items:
        return " ".join(t for t in (spans_text(item.spans) for item in block.items) if t)
    return spans_text(block.spans)


def strip_markup(blocks):
    """
    Texte brut d'une suite de blocs : libellés des liens conservés,
    cibles supprimées, un saut de ligne entre blocs.

    Args:
        blocks (list): Blocs produits par parse_page

    Returns:
        str: Texte sans balisage
    """
    return "\n".join(t for t in (block_text(b) for b in blocks) if t)

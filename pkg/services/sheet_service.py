"""
Extraction des fiches de lecture, de collection et d'expérience
"""
import logging
from datetime import datetime

from services.markup_service import block_text, parse_page, spans_text, strip_markup
from utils.namespace_utils import classify_page, is_experiment_root
from utils.schema_loader import SHEET_FIELDS
from wiki_models import (
    CollectionSheet,
    Evaluation,
    ExperimentSheet,
    ReadingSheet,
    TodoItem,
)

logger = logging.getLogger(__name__)

__all__ = [
    "classify_page",
    "extract_collection_sheet",
    "extract_experiment_sheet",
    "extract_reading_sheet",
    "parse_sheet_timestamp",
    "review_status",
]

TIMESTAMP_FORMATS = ("%Y-%m-%d %H:%M:%S", "%Y-%m-%d %H:%M", "%Y-%m-%d")
ONGOING = "ongoing"


def label_key(text):
    """Clé de comparaison d'un libellé de ligne : minuscules, blancs réduits"""
    return " ".join(text.lower().split()).rstrip(":").strip()


def _field_lookup(kind):
    return {label_key(label): name
            for name, labels in SHEET_FIELDS.get(kind, {}).items()
            for label in labels}


def _first_table(blocks):
    for index, block in enumerate(blocks):
        if block.kind == "table":
            return index
    return None


def _title(blocks, page):
    for block in blocks:
        if block.kind == "heading" and block.level == 1:
            title = spans_text(block.spans)
            if title:
                return title
    return page.slug.replace("-", " ")


def _metadata_rows(table):
    """(libellé, cellules de valeur) pour chaque ligne du tableau de métadonnées"""
    for row in table.rows:
        if not row.cells or (row.is_header and len(row.cells) > 1):
            continue
        yield spans_text(row.cells[0].spans), row.cells[1:]


def _links_in(cells):
    return [span.link_target for cell in cells for span in cell.spans if span.kind == "link"]


def _urls_in(cells):
    return [span.url for cell in cells for span in cell.spans if span.kind == "external"]


def _text_of(cells):
    return " ".join(t for t in (spans_text(cell.spans) for cell in cells) if t)


def _sections(blocks, start):
    """
    Découpe les blocs qui suivent l'indice start en sections (titre, blocs)
    """
    sections = []
    for block in blocks[start:]:
        if block.kind == "heading":
            sections.append((spans_text(block.spans), []))
        elif sections:
            sections[-1][1].append(block)
    return sections


def _section_table(sections, keyword):
    for heading, section_blocks in sections:
        if keyword in heading.lower():
            for block in section_blocks:
                if block.kind == "table":
                    return block
    return None


def _data_rows(table):
    """Lignes de données : ni en-tête, ni entièrement vides"""
    for row in table.rows:
        if row.is_header:
            continue
        texts = [spans_text(cell.spans) for cell in row.cells]
        if any(texts):
            yield texts


def review_status(page_id, links):
    """
    Statut de lecture d'une fiche d'après les liens des pages d'index :
    gras -> reviewed, puis préfixes in-review / to-review, sinon listed.
    """
    inbound = [link for link in links if link.target == page_id]
    if any(link.bold for link in inbound):
        return "reviewed"
    prefixes = {link.prefix for link in inbound}
    for status in ("in-review", "to-review"):
        if status in prefixes:
            return status
    return "listed"


def extract_reading_sheet(page, links=(), blocks=None):
    """
    Extrait la fiche de lecture d'une page de phd:bibliography.

    Le premier tableau donne les métadonnées ; le premier paragraphe entre le
    tableau et le premier titre est le résumé ; chaque titre suivant ouvre une
    section de notes.

    Args:
        page (WikiPage): Page classée reading-sheet
        links (list): Liens des pages d'index (le statut en dépend)
        blocks (list, optional): Blocs déjà analysés

    Returns:
        ReadingSheet: La fiche, éventuellement vide avec des problèmes signalés
    """
    blocks = parse_page(page.raw_text) if blocks is None else blocks
    sheet = ReadingSheet(page_id=page.id, title=_title(blocks, page))
    sheet.status = review_status(page.id, links)

    table_index = _first_table(blocks)
    if table_index is None:
        message = f"{page.id}: tableau de métadonnées absent"
        logger.warning(message)
        sheet.issues.append(message)
        return sheet
    sheet.has_table = True

    lookup = _field_lookup("reading-sheet")
    venues = []
    for label, cells in _metadata_rows(blocks[table_index]):
        key = label_key(label)
        field_name = lookup.get(key)
        if field_name is None:
            sheet.issues.append(f"{page.id}: libellé inconnu '{label}'")
            continue
        sheet.present_fields.add(key)
        targets = _links_in(cells)

        if field_name == "title":
            sheet.title = _text_of(cells) or sheet.title
        elif field_name == "authors":
            sheet.authors.extend(targets)
        elif field_name == "year":
            sheet.year = sheet.year or next(iter(targets), None)
        elif field_name in ("conference", "journal"):
            getattr(sheet, field_name + "s").extend(targets)
            venues.extend((target, field_name) for target in targets)
        else:
            if getattr(sheet, field_name) is None and targets:
                setattr(sheet, field_name, targets[0])

    if venues:
        sheet.venue, sheet.venue_kind = venues[0]
    if not sheet.authors:
        sheet.issues.append(f"{page.id}: aucun auteur")

    following = blocks[table_index + 1:]
    for block in following:
        if block.kind == "heading":
            break
        if block.kind == "paragraph":
            sheet.summary = spans_text(block.spans) or None
            break

    sheet.notes = [(heading, strip_markup(section_blocks))
                   for heading, section_blocks in _sections(blocks, table_index + 1)]
    return sheet


def extract_collection_sheet(page, blocks=None):
    """
    Extrait la fiche d'une collection de données (phd:collections).

    Les libellés hors Source/Paper/Date/Size sont des statistiques, gardées
    telles quelles et dans l'ordre du tableau.

    Args:
        page (WikiPage): Page classée collection-page
        blocks (list, optional): Blocs déjà analysés

    Returns:
        CollectionSheet: La fiche
    """
    blocks = parse_page(page.raw_text) if blocks is None else blocks
    sheet = CollectionSheet(page_id=page.id, name=_title(blocks, page))

    table_index = _first_table(blocks)
    if table_index is None:
        message = f"{page.id}: tableau de métadonnées absent"
        logger.warning(message)
        sheet.issues.append(message)
        return sheet
    sheet.has_table = True

    lookup = _field_lookup("collection-page")
    for label, cells in _metadata_rows(blocks[table_index]):
        key = label_key(label)
        if not key:
            continue
        sheet.present_fields.add(key)
        field_name = lookup.get(key)
        targets, urls, text = _links_in(cells), _urls_in(cells), _text_of(cells)

        if field_name == "source":
            if targets:
                sheet.source, sheet.source_is_page = targets[0], True
            else:
                sheet.source = next(iter(urls), None) or text or None
        elif field_name == "paper":
            sheet.paper_link = next(iter(targets), None) or next(iter(urls), None) or text or None
        elif field_name in ("date", "size"):
            setattr(sheet, field_name, text)
        else:
            sheet.stats[label] = text

    table = _section_table(_sections(blocks, table_index + 1), "evaluation")
    if table is not None:
        for texts in _data_rows(table):
            if len(texts) == 4 and all(texts[:3]):
                sheet.evaluations.append(Evaluation(*texts))
            else:
                raw = " | ".join(texts)
                sheet.unparsed_rows.append(raw)
                sheet.issues.append(f"{page.id}: ligne d'évaluation non reconnue '{raw}'")
    return sheet


def extract_experiment_sheet(page, all_page_ids, blocks=None):
    """
    Extrait la fiche d'une expérience (racine de phd:experiments:<nom>).

    Args:
        page (WikiPage): Page classée experiment-page
        all_page_ids (iterable): Identifiants de toutes les pages du wiki
        blocks (list, optional): Blocs déjà analysés

    Returns:
        ExperimentSheet: La fiche ; logs contient les pages sous son namespace
    """
    blocks = parse_page(page.raw_text) if blocks is None else blocks
    sheet = ExperimentSheet(page_id=page.id)
    if not is_experiment_root(page.id):
        sheet.issues.append(f"{page.id}: page de journal, pas une racine d'expérience")

    prefix = page.id + ":"
    sheet.logs = sorted(pid for pid in all_page_ids if pid.startswith(prefix))
    sheet.todo = [TodoItem(text=spans_text(b.spans), checked=b.checked)
                  for b in blocks if b.kind == "todo-item"]

    table_index = _first_table(blocks)
    if table_index is None:
        message = f"{page.id}: tableau de métadonnées absent"
        logger.warning(message)
        sheet.issues.append(message)
        return sheet
    sheet.has_table = True

    lookup = _field_lookup("experiment-page")
    for label, cells in _metadata_rows(blocks[table_index]):
        key = label_key(label)
        field_name = lookup.get(key)
        if field_name is None:
            sheet.issues.append(f"{page.id}: libellé inconnu '{label}'")
            continue
        sheet.present_fields.add(key)
        if field_name == "test_collection":
            sheet.test_collection = next(iter(_links_in(cells)), None)
        else:
            setattr(sheet, field_name, _text_of(cells))

    sections = _sections(blocks, table_index + 1)

    versions = _section_table(sections, "version")
    if versions is not None:
        sheet.versions = [(texts[0], texts[1] if len(texts) > 1 else "")
                          for texts in _data_rows(versions)]

    evaluation = _section_table(sections, "evaluation")
    if evaluation is not None:
        sheet.evaluations = _evaluation_rows(evaluation)

    deprecated = {label_key(name): name for name in SHEET_FIELDS.get("experiment-deprecated", [])}
    for heading, section_blocks in sections:
        name = deprecated.get(label_key(heading))
        if name is None:
            continue
        rows = []
        for block in section_blocks:
            if block.kind == "table":
                rows.extend(" | ".join(texts) for texts in _data_rows(block))
            elif block.items:
                rows.extend(t for t in (spans_text(i.spans) for i in block.items) if t)
            elif block_text(block):
                rows.append(block_text(block))
        sheet.deprecated_sections[name] = rows
    return sheet


def _evaluation_rows(table):
    """
    Triplets (version, métrique, valeur) d'un tableau d'évaluation.

    Deux formes : longue (Version | Metric | Value) ou large
    (Version | <métrique> | <métrique>...).
    """
    headers = []
    if table.rows and table.rows[0].is_header:
        headers = [spans_text(cell.spans) for cell in table.rows[0].cells]
    long_form = [label_key(h) for h in headers] == ["version", "metric", "value"]
    if not headers:
        long_form = True

    triples = []
    for texts in _data_rows(table):
        if long_form:
            if len(texts) >= 3 and texts[0]:
                triples.append((texts[0], texts[1], texts[2]))
            continue
        for metric, value in zip(headers[1:], texts[1:]):
            if value:
                triples.append((texts[0], metric, value))
    return triples


def parse_sheet_timestamp(text):
    """
    Convertit une date de fiche ('2017-10-24 16:38') en datetime

    Returns:
        datetime | None: None pour 'Ongoing' ou un texte non reconnu
    """
    text = (text or "").strip()
    if not text or text.lower() == ONGOING:
        return None
    for fmt in TIMESTAMP_FORMATS:
        try:
            return datetime.strptime(text, fmt)
        except ValueError:
            continue
    return None

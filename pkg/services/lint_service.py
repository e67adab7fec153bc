"""
Vérification du wiki par rapport aux conventions de structure
"""
import logging

from services.graph_service import backlinks
from services.sheet_service import parse_sheet_timestamp
from utils.namespace_utils import STATUS_PAGES, classify_page, entity_kind_of
from utils.schema_loader import LINT_RULES
from utils.slug_utils import is_valid_page_id
from wiki_models import Diagnostic

logger = logging.getLogger(__name__)

SEVERITIES = ("error", "warning", "info")


def _diagnostic(rule, page_id, message):
    severity = LINT_RULES.get(rule, {}).get("severity", "warning")
    return Diagnostic(severity=severity, page_id=page_id, rule=rule, message=message)


def lint(pages, graph, sheets):
    """
    Applique la table des règles R01 à R08.

    Ne lève jamais d'exception : tout écart devient un diagnostic.

    Args:
        pages (list): Pages du wiki (WikiPage)
        graph (LinkGraph): Graphe des liens
        sheets (SheetSet): Fiches extraites

    Returns:
        list: Diagnostics triés par page, règle puis message
    """
    diagnostics = []
    diagnostics += _check_page_ids(pages)
    diagnostics += _check_dangling_links(graph)
    diagnostics += _check_reading_sheets(sheets.reading)
    diagnostics += _check_entity_pages(graph)
    diagnostics += _check_experiments(sheets.experiments)
    diagnostics += _check_collections(sheets.collections, graph)
    diagnostics += _check_review_lists(graph)

    diagnostics.sort(key=Diagnostic.sort_key)
    logger.info(f"{len(diagnostics)} diagnostics")
    return diagnostics


def count_by_severity(diagnostics):
    counts = dict.fromkeys(SEVERITIES, 0)
    for diagnostic in diagnostics:
        counts[diagnostic.severity] += 1
    return counts


def _check_page_ids(pages):
    found = []
    for page in pages:
        written = page.raw_id or page.id
        if not is_valid_page_id(written):
            found.append(_diagnostic("R01", page.id, f"identifiant '{written}' hors convention de nommage"))
    return found


def _check_dangling_links(graph):
    return [_diagnostic("R02", edge.source, f"lien vers la page inexistante {edge.target}")
            for edge in graph.edges.values() if edge.target in graph.dangling]


def _check_reading_sheets(reading):
    found = []
    for page_id, sheet in reading.items():
        if not sheet.has_table:
            found.append(_diagnostic("R03", page_id, "fiche de lecture sans tableau de métadonnées"))
        if sheet.status == "reviewed" and not sheet.summary:
            found.append(_diagnostic("R04", page_id, "publication lue sans résumé"))
    return found


def _check_entity_pages(graph):
    found = []
    for page_id in sorted(graph.pages):
        kind = entity_kind_of(classify_page(page_id))
        if kind and not backlinks(graph, page_id):
            found.append(_diagnostic("R05", page_id, f"page d'entité ({kind}) sans rétrolien"))
    return found


def _check_experiments(experiments):
    found = []
    for page_id, sheet in experiments.items():
        start = parse_sheet_timestamp(sheet.start)
        end = parse_sheet_timestamp(sheet.end)
        if start and end and end < start:
            found.append(_diagnostic(
                "R06", page_id, f"fin ({sheet.end}) antérieure au début ({sheet.start})"))
    return found


def _check_collections(collections, graph):
    return [_diagnostic("R07", page_id, f"collection d'origine {sheet.source} introuvable")
            for page_id, sheet in collections.items()
            if sheet.is_subset and sheet.source not in graph.pages]


def _check_review_lists(graph):
    """
    Compare les listes in-review / to-review aux préfixes des liens.
    """
    found = []
    for status_page, status in STATUS_PAGES.items():
        if status_page not in graph.pages:
            continue
        listed = {edge.target for edge in graph.edges.values()
                  if edge.source == status_page and classify_page(edge.target) == "reading-sheet"}
        prefixed = {edge.target for edge in graph.edges.values() if edge.prefix == status}
        for target in sorted(listed - prefixed):
            found.append(_diagnostic(
                "R08", target, f"listée dans {status_page} sans préfixe {status}"))
        for target in sorted(prefixed - listed):
            found.append(_diagnostic(
                "R08", target, f"préfixe {status} mais absente de {status_page}"))
    return found

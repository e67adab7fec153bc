"""
Chaîne d'ingestion commune aux commandes : chargement, analyse des pages,
graphe des liens, fiches et noms affichés des entités
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import config
from services.graph_service import build_graph
from services.markup_service import extract_links, parse_page, spans_text
from services.sheet_service import (
    classify_page,
    extract_collection_sheet,
    extract_experiment_sheet,
    extract_reading_sheet,
)
from services.wiki_service import load_wiki
from utils.namespace_utils import entity_kind_of, is_experiment_root, is_status_source
from wiki_models import LinkGraph, SheetSet

logger = logging.getLogger(__name__)


@dataclass
class WikiSnapshot:
    """
    État d'un wiki après ingestion ; tous les dictionnaires sont indexés
    par identifiant de page et triés
    """
    pages: list = field(default_factory=list)
    blocks: dict = field(default_factory=dict)
    links: dict = field(default_factory=dict)
    graph: LinkGraph = field(default_factory=LinkGraph)
    sheets: SheetSet = field(default_factory=SheetSet)
    display_names: dict = field(default_factory=dict)
    issues: list = field(default_factory=list)

    @property
    def page_ids(self):
        return [page.id for page in self.pages]


def _parse(page):
    blocks = parse_page(page.raw_text)
    return blocks, extract_links(blocks, page.id)


def ingest_wiki(root, workers=None):
    """
    Charge et analyse un wiki complet.

    Le travail par page est réparti sur un pool de threads ; la fusion se
    fait toujours dans l'ordre des identifiants, le résultat ne dépend donc
    pas du nombre de threads.

    Args:
        root (WikiRoot): Racine du wiki
        workers (int, optional): Taille du pool (config.WORKERS par défaut)

    Returns:
        WikiSnapshot: Pages, blocs, liens, graphe, fiches et noms affichés
    """
    workers = max(1, workers or config.WORKERS)
    snapshot = WikiSnapshot()
    snapshot.pages = load_wiki(root, workers=workers, issues=snapshot.issues)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        parsed = list(executor.map(_parse, snapshot.pages))
    for page, (blocks, links) in zip(snapshot.pages, parsed):
        snapshot.blocks[page.id] = blocks
        snapshot.links[page.id] = links

    snapshot.graph = build_graph(snapshot.links)
    status_links = [link for page_id, links in snapshot.links.items()
                    if is_status_source(page_id) for link in links]

    by_id = {page.id: page for page in snapshot.pages}
    page_ids = list(by_id)

    def extract(page_id):
        page, blocks = by_id[page_id], snapshot.blocks[page_id]
        kind = classify_page(page_id)
        if kind == "reading-sheet":
            return kind, extract_reading_sheet(page, status_links, blocks=blocks)
        if kind == "collection-page":
            return kind, extract_collection_sheet(page, blocks=blocks)
        if kind == "experiment-page" and is_experiment_root(page_id):
            return kind, extract_experiment_sheet(page, page_ids, blocks=blocks)
        return kind, None

    with ThreadPoolExecutor(max_workers=workers) as executor:
        extracted = list(executor.map(extract, page_ids))

    targets = {
        "reading-sheet": snapshot.sheets.reading,
        "collection-page": snapshot.sheets.collections,
        "experiment-page": snapshot.sheets.experiments,
    }
    for page_id, (kind, sheet) in zip(page_ids, extracted):
        if sheet is not None:
            targets[kind][page_id] = sheet
            snapshot.issues.extend(sheet.issues)

    snapshot.display_names = display_names(snapshot)
    logger.info(f"Ingestion : {len(snapshot.pages)} pages, {len(snapshot.graph.edges)} liens, "
                f"{len(snapshot.sheets.reading)} fiches de lecture")
    return snapshot


def display_names(snapshot):
    """
    Nom affiché de chaque entité : premier libellé de lien rencontré (pages
    parcourues dans l'ordre des identifiants), sinon titre de niveau 1 de la
    page d'entité
    """
    names = {}
    for page_id in sorted(snapshot.links):
        for link in snapshot.links[page_id]:
            if link.label and entity_kind_of(classify_page(link.target)):
                names.setdefault(link.target, link.label.strip())

    for page_id, blocks in snapshot.blocks.items():
        if page_id in names or not entity_kind_of(classify_page(page_id)):
            continue
        for block in blocks:
            if block.kind == "heading" and block.level == 1 and spans_text(block.spans):
                names[page_id] = spans_text(block.spans)
                break
    return dict(sorted(names.items()))

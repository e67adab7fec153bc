"""
Graphe des liens internes, rétroliens et index d'entités
"""
from utils.namespace_utils import classify_page
from wiki_models import ENTITY_KINDS, PREFIX_STRENGTH, Edge, LinkGraph


def build_graph(links_by_page):
    """
    Construit le graphe orienté des liens internes.

    Les liens répétés d'une page vers une même cible fusionnent en une arête :
    gras si l'un d'eux l'est, préfixe le plus fort (in-review > to-review > none).

    Args:
        links_by_page (dict): Identifiant de page existante -> liste de InternalLink

    Returns:
        LinkGraph: Le graphe
    """
    pages = frozenset(links_by_page)
    edges = {}
    # Parcours dans l'ordre des identifiants pour un résultat canonique
    for source in sorted(links_by_page):
        for link in links_by_page[source]:
            key = (source, link.target)
            previous = edges.get(key)
            if previous is None:
                edges[key] = Edge(source, link.target, link.bold, link.prefix)
                continue
            prefix = previous.prefix
            if PREFIX_STRENGTH[link.prefix] > PREFIX_STRENGTH[prefix]:
                prefix = link.prefix
            edges[key] = Edge(source, link.target, previous.bold or link.bold, prefix)

    incoming = {}
    for source, target in edges:
        incoming.setdefault(target, []).append(source)
    for sources in incoming.values():
        sources.sort()

    targets = {target for _, target in edges}
    return LinkGraph(
        pages=pages,
        nodes=frozenset(pages | targets),
        edges=dict(sorted(edges.items())),
        dangling=frozenset(targets - pages),
        incoming=incoming,
    )


def backlinks(graph, page_id):
    """
    Pages qui pointent vers page_id, triées

    Args:
        graph (LinkGraph): Le graphe
        page_id (str): Page cible (existante ou non)

    Returns:
        list: Identifiants des pages sources
    """
    return list(graph.incoming.get(page_id, []))


def entity_index(graph, kind):
    """
    Index d'une catégorie d'entités : entité -> fiches de lecture qui la citent.

    Toutes les entités du graphe sont listées, même sans fiche.

    Args:
        graph (LinkGraph): Le graphe
        kind (str): author, year, journal, conference, publisher ou institution

    Returns:
        dict: Identifiant d'entité -> liste triée d'identifiants de fiches
    """
    if kind not in ENTITY_KINDS:
        raise ValueError(f"Type d'entité inconnu : {kind}")
    page_kind = f"{kind}-page"
    return {
        node: [source for source in backlinks(graph, node)
               if classify_page(source) == "reading-sheet"]
        for node in sorted(graph.nodes)
        if classify_page(node) == page_kind
    }

"""
Classification des pages selon leur espace de noms
"""
from wiki_models import ENTITY_KINDS

BIBLIOGRAPHY = "phd:bibliography"
IN_REVIEW_PAGE = "phd:bibliography:in-review"
TO_REVIEW_PAGE = "phd:bibliography:to-review"
STATUS_PAGES = {IN_REVIEW_PAGE: "in-review", TO_REVIEW_PAGE: "to-review"}

# Préfixes testés dans l'ordre ; le premier qui correspond l'emporte
_PREFIX_KINDS = [(f"{BIBLIOGRAPHY}:{kind}:", f"{kind}-page") for kind in ENTITY_KINDS] + [
    (f"{BIBLIOGRAPHY}:list:", "other"),
    (f"{BIBLIOGRAPHY}:", "reading-sheet"),
    ("phd:collections:", "collection-page"),
    ("phd:experiments:", "experiment-page"),
    ("phd:milestones:", "milestone-page"),
    ("phd:resources:", "resource-page"),
    ("infopages:", "infopage"),
]

# Pages d'index qui tomberaient sinon dans un préfixe plus général
_INDEX_PAGES = {f"{BIBLIOGRAPHY}:{kind}" for kind in ENTITY_KINDS} | {
    f"{BIBLIOGRAPHY}:list",
    IN_REVIEW_PAGE,
    TO_REVIEW_PAGE,
}


def classify_page(page_id):
    """
    Détermine le rôle d'une page à partir de son identifiant

    Args:
        page_id (str): Identifiant de page (segments séparés par ':')

    Returns:
        str: Un des PAGE_KINDS ('other' si aucun préfixe ne correspond)
    """
    if page_id == "infopages":
        return "infopage"
    if page_id in _INDEX_PAGES:
        return "other"
    for prefix, kind in _PREFIX_KINDS:
        if page_id.startswith(prefix):
            return kind
    return "other"


def entity_kind_of(page_kind):
    """'author-page' -> 'author' ; None pour les autres types"""
    if page_kind.endswith("-page") and page_kind[:-5] in ENTITY_KINDS:
        return page_kind[:-5]
    return None


def is_status_source(page_id):
    """
    Pages de la bibliographie dont les liens fixent le statut de lecture :
    l'index lui-même et toute page du namespace qui n'est pas une fiche.
    """
    if page_id == BIBLIOGRAPHY:
        return True
    return page_id.startswith(BIBLIOGRAPHY + ":") and classify_page(page_id) != "reading-sheet"


def is_experiment_root(page_id):
    """phd:experiments:<nom> exactement ; les journaux de recherche sont en dessous"""
    parts = page_id.split(":")
    return len(parts) == 3 and parts[0] == "phd" and parts[1] == "experiments"

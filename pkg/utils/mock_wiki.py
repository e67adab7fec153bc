"""
Génère des wikis fictifs pour les tests (graphe de liens aléatoire).
"""
import random
from pathlib import Path

from utils.namespace_utils import IN_REVIEW_PAGE, TO_REVIEW_PAGE
from utils.slug_utils import namespace_path

# Namespaces tirés au sort pour les pages générées
NAMESPACES = [
    "phd:bibliography",
    "phd:bibliography:author",
    "phd:bibliography:year",
    "phd:bibliography:conference",
    "phd:collections",
    "phd:experiments",
    "infopages",
]

WORDS = [
    "entity", "graph", "ranking", "retrieval", "query", "model", "search",
    "document", "hypergraph", "term", "vector", "index", "wiki", "link",
]


def _page_id(rng):
    slug = "-".join(rng.sample(WORDS, rng.randint(1, 3)))
    return f"{rng.choice(NAMESPACES)}:{slug}"


def _link(rng, target):
    """Lien vers target, parfois en gras, parfois avec libellé ou préfixe de statut"""
    label = target.split(":")[-1].replace("-", " ").title() if rng.random() < 0.5 else None
    link = f"[[{target}|{label}]]" if label else f"[[{target}]]"
    if rng.random() < 0.3:
        link = f"**{link}**"
    roll = rng.random()
    if roll < 0.1:
        link = f"[[{IN_REVIEW_PAGE}|[In Review]]] {link}"
    elif roll < 0.2:
        link = f"[[{TO_REVIEW_PAGE}|[To Review]]] {link}"
    return link


def generate_wiki(seed=None, max_pages=50, max_links=200):
    """
    Génère un wiki aléatoire en mémoire

    Args:
        seed (int, optional): Graine pour un résultat reproductible
        max_pages (int): Nombre maximal de pages
        max_links (int): Nombre maximal de liens, toutes pages confondues

    Returns:
        dict: Identifiant de page -> texte brut
    """
    rng = random.Random(seed)
    page_ids = set()
    for _ in range(rng.randint(1, max_pages)):
        page_ids.add(_page_id(rng))
    page_ids = sorted(page_ids)

    # Quelques cibles sans page pour produire des liens pendants
    missing = [f"phd:bibliography:author:{rng.choice(WORDS)}-{i}" for i in range(rng.randint(0, 5))]
    targets = page_ids + missing

    body = {page_id: [] for page_id in page_ids}
    for _ in range(rng.randint(0, max_links)):
        source = rng.choice(page_ids)
        body[source].append(_link(rng, rng.choice(targets)))

    pages = {}
    for page_id in page_ids:
        lines = [f"====== {page_id.split(':')[-1].replace('-', ' ').title()} ======", ""]
        # Mélange de lignes de liste et de paragraphes
        for link in body[page_id]:
            lines.append(f"  * {link}" if rng.random() < 0.5 else link)
            if rng.random() < 0.3:
                lines.append("")
        pages[page_id] = "\n".join(lines) + "\n"
    return pages


def write_wiki(root_path, pages, pages_dir="pages"):
    """Écrit les pages générées sous root_path/pages_dir"""
    root = Path(root_path)
    for page_id, text in pages.items():
        path = root / pages_dir / Path(*namespace_path(page_id)).with_suffix(".txt")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    (root / "meta").mkdir(parents=True, exist_ok=True)
    return root

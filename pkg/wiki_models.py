# wiki_models.py
"""
Modèles de données du wiki, des fiches et des rapports
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import config

# Lettres du journal de modifications -> type de révision
CHANGE_TYPES = {
    "C": "create",
    "E": "edit",
    "e": "minor-edit",
    "D": "delete",
}

PAGE_KINDS = (
    "reading-sheet",
    "author-page",
    "year-page",
    "journal-page",
    "conference-page",
    "publisher-page",
    "institution-page",
    "collection-page",
    "experiment-page",
    "milestone-page",
    "resource-page",
    "infopage",
    "other",
)

ENTITY_KINDS = ("author", "year", "journal", "conference", "publisher", "institution")

REVIEW_STATUSES = ("reviewed", "in-review", "to-review", "listed")

# Ordre de priorité pour la fusion des préfixes de liens
PREFIX_STRENGTH = {"none": 0, "to-review": 1, "in-review": 2}

BIB_FIELDS = (
    "title",
    "author",
    "year",
    "conference",
    "core",
    "journal",
    "scimago_h_index",
    "institution",
    "publisher",
    "review",
)


@dataclass(frozen=True)
class WikiRoot:
    """
    Racine d'un wiki sur disque (pages + journaux de modifications)
    """
    root_path: Path
    pages_dir: str = config.PAGES_DIR
    meta_dir: str = config.META_DIR

    @property
    def pages_path(self):
        return Path(self.root_path) / self.pages_dir

    @property
    def meta_path(self):
        return Path(self.root_path) / self.meta_dir


@dataclass(frozen=True)
class Revision:
    timestamp: int
    change_type: str
    user: str = ""
    summary: str = ""


@dataclass
class WikiPage:
    id: str
    raw_text: str
    revisions: list = field(default_factory=list)
    source_path: Optional[Path] = None
    # identifiant tel qu'écrit sur disque, avant passage en minuscules
    raw_id: Optional[str] = None

    @property
    def slug(self):
        return self.id.split(":")[-1]


@dataclass(frozen=True)
class InlineSpan:
    """
    Élément inline : texte simple, texte gras, lien interne ou lien externe
    """
    kind: str
    text: str
    bold: bool = False
    link_target: Optional[str] = None
    link_label: Optional[str] = None
    url: Optional[str] = None

    @property
    def display_text(self):
        if self.kind == "link":
            if self.link_label:
                return self.link_label
            return self.link_target.split(":")[-1].replace("-", " ")
        if self.kind == "external":
            return self.link_label or self.url
        return self.text


@dataclass(frozen=True)
class TableCell:
    spans: tuple
    header: bool = False


@dataclass(frozen=True)
class TableRow:
    cells: tuple

    @property
    def is_header(self):
        return bool(self.cells) and all(cell.header for cell in self.cells)


@dataclass(frozen=True)
class ListItem:
    spans: tuple
    depth: int = 1


@dataclass(frozen=True)
class Block:
    """
    Bloc de premier niveau d'une page.

    kind vaut heading, paragraph, table, unordered-list, ordered-list,
    blockquote ou todo-item.
    """
    kind: str
    spans: tuple = ()
    level: int = 0
    rows: tuple = ()
    items: tuple = ()
    checked: bool = False


@dataclass(frozen=True)
class InternalLink:
    source: str
    target: str
    label: str = ""
    bold: bool = False
    prefix: str = "none"


@dataclass
class ReadingSheet:
    page_id: str
    title: str = ""
    authors: list = field(default_factory=list)
    year: Optional[str] = None
    venue: Optional[str] = None
    venue_kind: Optional[str] = None
    conferences: list = field(default_factory=list)
    journals: list = field(default_factory=list)
    institution: Optional[str] = None
    publisher: Optional[str] = None
    status: str = "listed"
    summary: Optional[str] = None
    notes: list = field(default_factory=list)
    has_table: bool = False
    present_fields: set = field(default_factory=set)
    issues: list = field(default_factory=list)


@dataclass(frozen=True)
class Evaluation:
    task: str
    metric: str
    value: str
    citation: str = ""


@dataclass
class CollectionSheet:
    page_id: str
    name: str = ""
    source: Optional[str] = None
    source_is_page: bool = False
    paper_link: Optional[str] = None
    date: str = ""
    size: str = ""
    stats: dict = field(default_factory=dict)
    evaluations: list = field(default_factory=list)
    unparsed_rows: list = field(default_factory=list)
    has_table: bool = False
    present_fields: set = field(default_factory=set)
    issues: list = field(default_factory=list)

    @property
    def is_subset(self):
        return self.source_is_page


@dataclass(frozen=True)
class TodoItem:
    text: str
    checked: bool = False


@dataclass
class ExperimentSheet:
    page_id: str
    label: str = ""
    start: str = ""
    end: str = ""
    motivation: str = ""
    strengths: str = ""
    weaknesses: str = ""
    test_collection: Optional[str] = None
    todo: list = field(default_factory=list)
    versions: list = field(default_factory=list)
    evaluations: list = field(default_factory=list)
    logs: list = field(default_factory=list)
    deprecated_sections: dict = field(default_factory=dict)
    has_table: bool = False
    present_fields: set = field(default_factory=set)
    issues: list = field(default_factory=list)


@dataclass
class SheetSet:
    """Fiches extraites d'un wiki, indexées par identifiant de page"""
    reading: dict = field(default_factory=dict)
    collections: dict = field(default_factory=dict)
    experiments: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    bold: bool = False
    prefix: str = "none"


@dataclass
class LinkGraph:
    """
    Graphe orienté des liens internes.

    edges est indexé par (source, cible) ; incoming garde, pour chaque cible,
    les sources triées.
    """
    pages: frozenset = frozenset()
    nodes: frozenset = frozenset()
    edges: dict = field(default_factory=dict)
    dangling: frozenset = frozenset()
    incoming: dict = field(default_factory=dict)

    def edge_set(self):
        return {(e.source, e.target, e.bold, e.prefix) for e in self.edges.values()}


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    page_id: str
    rule: str
    message: str

    def render(self):
        return f"{self.severity}\t{self.rule}\t{self.page_id}\t{self.message}"

    def sort_key(self):
        return (self.page_id, self.rule, self.message)


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    acronym: Optional[str]
    value: str


@dataclass
class VenueRegistry:
    kind: str
    entries: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class VenueMatch:
    raw: str
    extracted_name: str
    matched_entry: Optional[RegistryEntry] = None
    score: float = 0.0
    accepted: bool = False
    kind: Optional[str] = None


@dataclass(frozen=True)
class BibRecord:
    title: str = ""
    author: str = ""
    year: str = ""
    conference: str = ""
    core: str = ""
    journal: str = ""
    scimago_h_index: str = ""
    institution: str = ""
    publisher: str = ""
    review: str = ""

    def to_dict(self):
        return {name: getattr(self, name) for name in BIB_FIELDS}


@dataclass(frozen=True)
class TimeSeriesPoint:
    bucket: str
    count: int
    cumulative: int


@dataclass(frozen=True)
class TermFreq:
    entries: tuple = ()

    @property
    def total(self):
        return sum(freq for _, freq in self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass
class ScaffoldReport:
    root: Path
    pages: list = field(default_factory=list)
    directories: list = field(default_factory=list)
    templates: list = field(default_factory=list)

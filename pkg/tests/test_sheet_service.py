import pytest

from services.markup_service import extract_links, parse_page
from services.sheet_service import (
    classify_page,
    extract_collection_sheet,
    extract_experiment_sheet,
    extract_reading_sheet,
    parse_sheet_timestamp,
    review_status,
)
from utils.schema_loader import WIKI_STRUCTURE, load_template
from wiki_models import InternalLink, WikiPage

BIB = "phd:bibliography"


@pytest.mark.parametrize("page_id, kind", [
    ("phd:bibliography:author:w-bruce-croft", "author-page"),
    ("phd:bibliography:year:2018", "year-page"),
    ("phd:bibliography:journal:information-retrieval-journal", "journal-page"),
    ("phd:bibliography:conference:ecir-2019", "conference-page"),
    ("phd:bibliography:publisher:acm", "publisher-page"),
    ("phd:bibliography:institution:example-university", "institution-page"),
    ("phd:bibliography:entity-ranking-with-concordance-graphs", "reading-sheet"),
    ("phd:bibliography", "other"),
    ("phd:bibliography:author", "other"),
    ("phd:bibliography:in-review", "other"),
    ("phd:bibliography:list:surveys", "other"),
    ("phd:collections:wiki-entity-collection", "collection-page"),
    ("phd:experiments:hypergraph-of-entity:log-1", "experiment-page"),
    ("phd:milestones:proposal", "milestone-page"),
    ("phd:resources:tools", "resource-page"),
    ("infopages", "infopage"),
    ("infopages:dokuwiki", "infopage"),
    ("start", "other"),
    ("sidebar", "other"),
])
def test_classify_page(page_id, kind):
    assert classify_page(page_id) == kind


def _sheet(snapshot, slug):
    return snapshot.sheets.reading[f"{BIB}:{slug}"]


def test_reading_sheet_fields(snapshot):
    sheet = _sheet(snapshot, "entity-ranking-with-concordance-graphs")
    assert sheet.title == "Entity Ranking with Concordance Graphs"
    assert sheet.authors == [f"{BIB}:author:ana-sousa", f"{BIB}:author:rui-costa"]
    assert sheet.year == f"{BIB}:year:2018"
    assert sheet.venue_kind == "conference"
    assert sheet.venue.startswith(f"{BIB}:conference:proceedings-of-the-41st")
    assert sheet.institution == f"{BIB}:institution:example-university"
    assert sheet.publisher is None
    assert sheet.summary == "Concordance graphs rank entities, combining term and entity signals."
    assert [heading for heading, _ in sheet.notes] == ["Introduction", "Conclusions"]
    assert sheet.notes[0][1] == "Entity ranking combines text retrieval with graph traversal."
    assert sheet.notes[1][1] == "Graph based ranking improves entity retrieval. See the hyperedge experiment."


def test_reading_sheet_journal(snapshot):
    sheet = _sheet(snapshot, "entity-linking-with-a-knowledge-base")
    assert sheet.venue_kind == "journal"
    assert sheet.journals == [f"{BIB}:journal:information-processing-management"]
    assert sheet.publisher == f"{BIB}:publisher:elsevier"
    assert sheet.summary is None


def test_review_statuses(snapshot):
    statuses = {page_id.split(":")[-1]: sheet.status for page_id, sheet in snapshot.sheets.reading.items()}
    assert statuses == {
        "a-graph-of-terms-and-entities": "in-review",
        "entity-linking-with-a-knowledge-base": "listed",
        "entity-ranking-with-concordance-graphs": "reviewed",
        "hyperedges-for-retrieval": "to-review",
        "relevance-based-language-models": "reviewed",
    }


def test_bold_wins_over_prefixes():
    links = [
        InternalLink(BIB, f"{BIB}:x", prefix="to-review"),
        InternalLink(f"{BIB}:list:surveys", f"{BIB}:x", bold=True),
    ]
    assert review_status(f"{BIB}:x", links) == "reviewed"
    assert review_status(f"{BIB}:y", links) == "listed"


def test_sheet_without_table():
    page = WikiPage(id=f"{BIB}:no-table", raw_text="====== No Table ======\n\nJust text.\n")
    sheet = extract_reading_sheet(page)
    assert not sheet.has_table
    assert sheet.title == "No Table"
    assert sheet.authors == []
    assert len(sheet.issues) == 1


def test_bold_link_from_index_marks_reviewed():
    index = parse_page(f"  * **[[{BIB}:x|X]]**")
    page = WikiPage(id=f"{BIB}:x", raw_text="^ Authors | [[phd:bibliography:author:a|A]] |\n\nSummary.\n")
    sheet = extract_reading_sheet(page, extract_links(index, BIB))
    assert sheet.status == "reviewed"
    assert sheet.summary == "Summary."


def test_labels_are_case_and_space_insensitive():
    page = WikiPage(id=f"{BIB}:x", raw_text=(
        "^  authors:  | [[phd:bibliography:author:a]] |\n"
        "^ PROCEEDINGS | [[phd:bibliography:conference:c]] |\n"
        "^ Author | [[phd:bibliography:author:b]] |\n"
    ))
    sheet = extract_reading_sheet(page)
    assert sheet.authors == [f"{BIB}:author:a", f"{BIB}:author:b"]
    assert sheet.venue == f"{BIB}:conference:c"
    assert sheet.issues == []


def test_collection_sheet_fields(snapshot):
    sheet = snapshot.sheets.collections["phd:collections:wiki-entity-collection"]
    assert sheet.name == "Wiki Entity Collection"
    assert sheet.source == "https://example.org/wiki-entity"
    assert not sheet.is_subset
    assert sheet.paper_link == f"{BIB}:entity-ranking-with-concordance-graphs"
    assert (sheet.date, sheet.size) == ("2017", "2.1 GB")
    assert sheet.stats == {"Documents": "390000", "Entities": "2500000", "Topics": "70", "Assessments": "7000"}
    assert sheet.present_fields == {
        "source", "paper", "date", "size", "documents", "entities", "topics", "assessments"}
    assert [(e.task, e.metric, e.value, e.citation) for e in sheet.evaluations] == [
        ("Ad hoc entity retrieval", "MAP", "0.2381", "Sousa 2018"),
        ("Entity list completion", "P@10", "0.3100", ""),
    ]
    assert sheet.unparsed_rows == ["Related entity finding | NDCG | 0.4100"]


def test_network_collection_stats(snapshot):
    sheet = snapshot.sheets.collections["phd:collections:citation-network"]
    assert list(sheet.stats) == ["Nodes", "Edges"]


def test_subset_collection_points_to_parent(snapshot):
    sheet = snapshot.sheets.collections["phd:collections:wiki-entity-collection-sample"]
    assert sheet.is_subset
    assert sheet.source == "phd:collections:wiki-entity-collection"


def test_experiment_sheet_fields(snapshot):
    experiments = snapshot.sheets.experiments
    assert list(experiments) == ["phd:experiments:hyperedge-ranking"]
    sheet = experiments["phd:experiments:hyperedge-ranking"]
    assert (sheet.label, sheet.start, sheet.end) == ("Experiment 1", "2017-10-24 16:38", "Ongoing")
    assert sheet.motivation == "Test whether hyperedges improve entity ranking."
    assert sheet.test_collection == "phd:collections:wiki-entity-collection"
    assert [(t.text, t.checked) for t in sheet.todo] == [
        ("Build the hypergraph", True), ("Tune the random walk length", False)]
    assert sheet.versions == [("v1", "Term and entity nodes"), ("v2", "Adds document hyperedges")]
    assert sheet.evaluations == [
        ("v1", "MAP", "0.1520"), ("v1", "P@10", "0.2400"),
        ("v2", "MAP", "0.1710"), ("v2", "P@10", "0.2600"),
    ]
    assert sheet.logs == [f"phd:experiments:hyperedge-ranking:log-{i}" for i in (1, 2, 3)]
    assert sheet.deprecated_sections == {"Challenges": ["Memory | The hypergraph does not fit in memory"]}


def test_experiment_without_logs_and_long_evaluations():
    page = WikiPage(id="phd:experiments:solo", raw_text=(
        "^ ID | Experiment 2 |\n\n===== Evaluation =====\n\n"
        "^ Version ^ Metric ^ Value ^\n| v1 | NDCG@10 | 0.3 |\n"
    ))
    sheet = extract_experiment_sheet(page, ["phd:experiments:solo", "phd:experiments:solo-other:log"])
    assert sheet.logs == []
    assert sheet.evaluations == [("v1", "NDCG@10", "0.3")]


def test_parse_sheet_timestamp():
    assert parse_sheet_timestamp("Ongoing") is None
    assert parse_sheet_timestamp("2017-10-24 16:38").hour == 16
    assert parse_sheet_timestamp("2018-01-02").day == 2
    assert parse_sheet_timestamp("soon") is None


def _template_page(namespace, template):
    return WikiPage(id=f"{namespace}:example", raw_text=load_template(template))


def _template_labels(template):
    table = next(b for b in parse_page(load_template(template)) if b.kind == "table")
    return {" ".join(cell.spans[0].text.lower().split()) for row in table.rows
            for cell in row.cells[:1] if cell.spans}


@pytest.mark.parametrize("namespace, template", [
    (entry["namespace"], entry["template"]) for entry in WIKI_STRUCTURE["namespace_templates"]
    if entry["template"] in ("reading_sheet.txt", "collection_sheet.txt", "experiment_sheet.txt")
])
def test_templates_agree_with_extractors(namespace, template):
    page = _template_page(namespace, template)
    if template == "reading_sheet.txt":
        sheet = extract_reading_sheet(page)
    elif template == "collection_sheet.txt":
        sheet = extract_collection_sheet(page)
    else:
        sheet = extract_experiment_sheet(page, [page.id])
    assert sheet.has_table
    assert sheet.present_fields == _template_labels(template)

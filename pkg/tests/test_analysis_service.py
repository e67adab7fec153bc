import os
from collections import Counter
import re

import pytest

from services.analysis_service import (
    bibliography_csv,
    build_bib_table,
    changes_over_time,
    count_by_dimension,
    export_bibliography,
    reading_corpus,
    term_frequency,
    write_outputs,
)
from services.biblio_service import load_overrides, load_registry, match_sheet_venues
from utils.errors import OutputError
from wiki_models import BIB_FIELDS, ReadingSheet, Revision, TermFreq, WikiPage

BIB = "phd:bibliography"
HEADER = ",".join(BIB_FIELDS) + "\n"


def _records(snapshot, registry_paths, overrides=None):
    core = load_registry("core-conference", registry_paths["core"])
    scimago = load_registry("scimago-journal", registry_paths["scimago"])
    matches = match_sheet_venues(snapshot.sheets.reading, snapshot.display_names, core, scimago, 0.5)
    return build_bib_table(snapshot.sheets.reading, matches, snapshot.display_names, overrides=overrides)


def _page(page_id, *timestamps):
    return WikiPage(id=page_id, raw_text="",
                    revisions=[Revision(timestamp=t, change_type="edit") for t in timestamps])


def test_no_sheets_gives_header_only():
    assert bibliography_csv(build_bib_table({}, {}, {})) == HEADER


def test_authors_are_joined_with_pipes():
    sheet = ReadingSheet(page_id=f"{BIB}:x", title="X",
                         authors=[f"{BIB}:author:ana-sousa", f"{BIB}:author:rui-costa"])
    records = build_bib_table({sheet.page_id: sheet}, {}, {f"{BIB}:author:ana-sousa": "Ana Sousa"})
    assert records[0].author == "Ana Sousa|rui costa"


def test_fixture_bibliography_matches_golden_file(snapshot, registry_paths, golden_bibliography):
    records = _records(snapshot, registry_paths)
    assert bibliography_csv(records).encode("utf-8") == golden_bibliography


def test_export_bibliography_writes_golden_bytes(snapshot, registry_paths, golden_bibliography, tmp_path):
    path = export_bibliography(_records(snapshot, registry_paths), tmp_path / "out" / "bibliography.csv")
    assert path.read_bytes() == golden_bibliography


def test_review_column_only_for_reviewed_sheets(snapshot, registry_paths):
    by_title = {r.title: r for r in _records(snapshot, registry_paths)}
    assert by_title["Entity Ranking with Concordance Graphs"].review.startswith("Concordance graphs")
    # résumé absent
    assert by_title["Relevance-Based Language Models"].review == ""
    assert by_title["A Graph of Terms and Entities"].review == ""


def test_overrides_replace_rank(snapshot, registry_paths):
    records = _records(snapshot, registry_paths, overrides=load_overrides(registry_paths["overrides"]))
    by_title = {r.title: r for r in records}
    assert by_title["Hyperedges for Retrieval"].core == "A"
    assert by_title["Entity Ranking with Concordance Graphs"].core == "A*"


def test_changes_over_time_empty():
    assert changes_over_time([], BIB) == []
    assert changes_over_time([_page("start", 1508856000)], BIB) == []


def test_changes_in_a_single_month():
    pages = [_page(f"{BIB}:x", 1508856000, 1508942400), _page(f"{BIB}:y", 1509000000)]
    points = changes_over_time(pages, BIB)
    assert [(p.bucket, p.count, p.cumulative) for p in points] == [("2017-10", 3, 3)]


def test_changes_with_fixed_month_range():
    points = changes_over_time([_page(f"{BIB}:x", 1508856000)], BIB, month_range=("2017-09", "2017-11"))
    assert [(p.bucket, p.count) for p in points] == [("2017-09", 0), ("2017-10", 1), ("2017-11", 0)]


def test_fixture_changes_series(snapshot):
    points = changes_over_time(snapshot.pages, BIB)
    assert [(p.bucket, p.count, p.cumulative) for p in points] == [
        ("2017-10", 3, 3),
        ("2017-11", 0, 3),
        ("2017-12", 2, 5),
        ("2018-01", 11, 16),
    ]
    revisions = sum(len(p.revisions) for p in snapshot.pages if p.id.startswith(BIB))
    assert points[-1].cumulative == revisions


def test_term_frequency_counts():
    sheet = ReadingSheet(page_id=f"{BIB}:x", summary="Graph graph entity")
    assert term_frequency({sheet.page_id: sheet}).entries == (("graph", 2), ("entity", 1))


def test_term_frequency_without_text():
    assert term_frequency({}) == TermFreq()
    sheet = ReadingSheet(page_id=f"{BIB}:x", summary="-- !!")
    assert len(term_frequency({sheet.page_id: sheet})) == 0


def test_fixture_term_frequency_against_counter(snapshot):
    counter = Counter(re.findall(r"[a-z0-9]+", " ".join(reading_corpus(snapshot.sheets.reading)).lower()))
    termfreq = term_frequency(snapshot.sheets.reading)
    assert dict(termfreq.entries) == dict(counter)
    assert termfreq.total == sum(counter.values())
    freqs = [freq for _, freq in termfreq.entries]
    assert freqs == sorted(freqs, reverse=True)


def test_counts_by_author(snapshot, registry_paths):
    records = _records(snapshot, registry_paths)
    authors = count_by_dimension(records)["author"]
    assert list(authors.itertuples(index=False, name=None)) == [
        ("Ana Sousa", 3), ("Rui Costa", 3), ("W. Bruce Croft", 2)]
    assert authors["count"].sum() == sum(len(r.author.split("|")) for r in records if r.author)


def test_write_outputs_with_empty_inputs(tmp_path):
    histograms = count_by_dimension([])
    written = write_outputs([], {BIB: []}, TermFreq(), histograms, tmp_path / "out")
    assert [p.name for p in written] == [
        "bibliography.csv",
        "changes-phd-bibliography.csv",
        "changes-phd-bibliography.svg",
        "term-frequency.csv",
        "term-frequency.svg",
        "counts-by-author.csv",
        "counts-by-author.svg",
        "counts-by-conference.csv",
        "counts-by-conference.svg",
        "counts-by-journal.csv",
        "counts-by-journal.svg",
        "counts-by-year.csv",
        "counts-by-year.svg",
    ]
    assert (tmp_path / "out" / "bibliography.csv").read_text(encoding="utf-8") == HEADER
    assert (tmp_path / "out" / "term-frequency.csv").read_text(encoding="utf-8") == "rank,term,frequency\n"


def _analysis(snapshot, registry_paths, output_dir):
    records = _records(snapshot, registry_paths)
    series = {BIB: changes_over_time(snapshot.pages, BIB)}
    return write_outputs(records, series, term_frequency(snapshot.sheets.reading),
                         count_by_dimension(records), output_dir)


def test_write_outputs_is_byte_identical_on_rerun(snapshot, registry_paths, tmp_path):
    first = _analysis(snapshot, registry_paths, tmp_path / "a")
    second = _analysis(snapshot, registry_paths, tmp_path / "b")
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes(), a.name
    assert (tmp_path / "a" / "changes-phd-bibliography.csv").read_text(encoding="utf-8") == (
        "bucket,count,cumulative\n2017-10,3,3\n2017-11,0,3\n2017-12,2,5\n2018-01,11,16\n")


@pytest.mark.skipif(os.name != "posix" or os.geteuid() == 0, reason="droits POSIX non appliqués")
def test_unwritable_output_dir(tmp_path):
    locked = tmp_path / "locked"
    locked.mkdir()
    locked.chmod(0o500)
    try:
        with pytest.raises(OutputError):
            write_outputs([], {}, TermFreq(), count_by_dimension([]), locked / "out")
    finally:
        locked.chmod(0o700)


def test_output_path_is_a_file(tmp_path):
    target = tmp_path / "taken"
    target.write_text("x", encoding="utf-8")
    with pytest.raises(OutputError):
        write_outputs([], {}, TermFreq(), count_by_dimension([]), target)


def test_author_labels_with_pipes_keep_author_count():
    sheet = ReadingSheet(page_id=f"{BIB}:x", title="X",
                         authors=[f"{BIB}:author:croft", f"{BIB}:author:lee"])
    names = {f"{BIB}:author:croft": "Croft | W. B.", f"{BIB}:author:lee": "Lee"}
    records = build_bib_table({sheet.page_id: sheet}, {}, names)
    assert records[0].author == "Croft / W. B.|Lee"
    authors = count_by_dimension(records)["author"]
    assert authors["count"].sum() == 2


def test_failed_write_removes_partial_file(tmp_path, monkeypatch):
    import services.analysis_service as analysis

    def write_then_fail(termfreq, path):
        path.write_text("rank,term,frequency\n", encoding="utf-8")
        raise OSError("disque plein")

    monkeypatch.setattr(analysis, "_write_termfreq_csv", write_then_fail)
    output = tmp_path / "out"
    with pytest.raises(OutputError):
        write_outputs([], {BIB: []}, TermFreq(), count_by_dimension([]), output)
    assert list(output.iterdir()) == []


def test_counts_charts_are_written(snapshot, registry_paths, tmp_path):
    records = _records(snapshot, registry_paths)
    written = write_outputs(records, {}, TermFreq(), count_by_dimension(records), tmp_path / "out")
    svg = (tmp_path / "out" / "counts-by-author.svg").read_text(encoding="utf-8")
    assert svg.startswith("<?xml")
    assert "counts-by-year.svg" in [p.name for p in written]

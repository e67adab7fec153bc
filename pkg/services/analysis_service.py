"""
Service d'analyse : table bibliographique, évolution des modifications,
fréquence des termes et graphiques SVG
"""
import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import numpy as np
import pandas as pd
from matplotlib.figure import Figure
from sklearn.feature_extraction.text import CountVectorizer

from utils.errors import OutputError
from utils.slug_utils import is_under
from wiki_models import BIB_FIELDS, BibRecord, TermFreq, TimeSeriesPoint

logger = logging.getLogger(__name__)

COUNT_DIMENSIONS = ("author", "conference", "journal", "year")
TOKEN_PATTERN = r"[a-z0-9]+"
# Sel fixe : les identifiants internes du SVG restent identiques d'un run à l'autre
SVG_HASHSALT = "wiki-sheets"


def _display(display_names, page_id):
    if not page_id:
        return ""
    return display_names.get(page_id) or page_id.split(":")[-1].replace("-", " ")


def _author_name(display_names, page_id):
    # '|' sépare les auteurs dans la colonne author
    return _display(display_names, page_id).replace("|", "/")


def build_bib_table(sheets, matches, display_names, overrides=None):
    """
    Construit la table d'export, une ligne par fiche de lecture.

    core n'est rempli que pour une conférence rapprochée avec succès,
    scimago_h_index que pour une revue ; review contient le résumé des
    publications lues.

    Args:
        sheets (dict): Identifiant -> ReadingSheet
        matches (dict): Identifiant de fiche -> VenueMatch
        display_names (dict): Identifiant d'entité -> nom affiché
        overrides (dict, optional): Nom en minuscules -> rang ou h-index imposé

    Returns:
        list: BibRecord triés par identifiant de page
    """
    overrides = overrides or {}
    records = []
    for page_id in sorted(sheets):
        sheet = sheets[page_id]
        match = matches.get(page_id)
        values = {
            "title": sheet.title,
            "author": "|".join(_author_name(display_names, a) for a in sheet.authors),
            "year": _display(display_names, sheet.year),
            "institution": _display(display_names, sheet.institution),
            "publisher": _display(display_names, sheet.publisher),
            "review": (sheet.summary or "") if sheet.status == "reviewed" else "",
        }

        if match is not None and sheet.venue_kind in ("conference", "journal"):
            name, value = _venue_columns(match, overrides)
            if sheet.venue_kind == "conference":
                values["conference"], values["core"] = name, value
            else:
                values["journal"], values["scimago_h_index"] = name, value
        elif sheet.venue:
            values[sheet.venue_kind] = _display(display_names, sheet.venue)

        records.append(BibRecord(**values))
    return records


def _venue_columns(match, overrides):
    """(nom normalisé, rang ou h-index) pour une venue"""
    if match.accepted:
        name, value = match.matched_entry.name, match.matched_entry.value
    else:
        name, value = match.extracted_name, ""
    for key in (match.extracted_name, match.raw, name):
        override = overrides.get(key.strip().lower())
        if override is not None:
            return name, override
    return name, value


def records_frame(records):
    return pd.DataFrame([r.to_dict() for r in records], columns=list(BIB_FIELDS), dtype=str)


def changes_over_time(pages, namespace, month_range=None):
    """
    Nombre de révisions par mois (UTC) pour les pages d'un namespace.

    Les mois vides à l'intérieur de la période sont émis avec un compte nul.

    Args:
        pages (list): Pages avec leurs révisions
        namespace (str): Préfixe, ex. phd:bibliography
        month_range (tuple, optional): ('AAAA-MM', 'AAAA-MM') pour fixer la période

    Returns:
        list: TimeSeriesPoint dans l'ordre chronologique
    """
    timestamps = [revision.timestamp
                  for page in pages if is_under(page.id, namespace)
                  for revision in page.revisions]
    if not timestamps and month_range is None:
        return []

    months = pd.to_datetime(pd.Series(timestamps, dtype="int64"), unit="s").dt.to_period("M")
    counts = months.value_counts()

    if month_range is not None:
        start, end = (pd.Period(m, freq="M") for m in month_range)
        counts = counts[(counts.index >= start) & (counts.index <= end)]
    else:
        start, end = months.min(), months.max()

    series = counts.reindex(pd.period_range(start, end, freq="M"), fill_value=0).astype(int)
    cumulative = series.cumsum()
    return [TimeSeriesPoint(bucket=str(period), count=int(count), cumulative=int(total))
            for period, count, total in zip(series.index, series.values, cumulative.values)]


def reading_corpus(sheets):
    """Un document par fiche : résumé puis texte des notes"""
    documents = []
    for page_id in sorted(sheets):
        sheet = sheets[page_id]
        parts = [sheet.summary or ""] + [text for _, text in sheet.notes]
        documents.append("\n".join(p for p in parts if p))
    return documents


def term_frequency(sheets):
    """
    Distribution brute des termes des fiches de lecture (sans mots vides).

    Args:
        sheets (dict): Identifiant -> ReadingSheet

    Returns:
        TermFreq: (terme, fréquence) par fréquence décroissante puis terme
    """
    documents = reading_corpus(sheets)
    vectorizer = CountVectorizer(lowercase=True, token_pattern=TOKEN_PATTERN)
    try:
        matrix = vectorizer.fit_transform(documents)
    except ValueError:
        # Vocabulaire vide
        return TermFreq()
    totals = np.asarray(matrix.sum(axis=0)).ravel()
    terms = vectorizer.get_feature_names_out()
    entries = sorted(zip(terms, (int(t) for t in totals)), key=lambda item: (-item[1], item[0]))
    return TermFreq(entries=tuple((str(term), freq) for term, freq in entries if freq > 0))


def count_by_dimension(records):
    """
    Comptes par auteur, conférence, revue et année

    Returns:
        dict: dimension -> DataFrame (valeur, count) trié
    """
    frame = records_frame(records)
    histograms = {}
    for dim in COUNT_DIMENSIONS:
        values = frame[dim] if not frame.empty else pd.Series([], dtype=str)
        if dim == "author":
            values = values.str.split("|").explode() if not values.empty else values
        values = values[values.fillna("") != ""]
        counts = values.value_counts().rename_axis(dim).reset_index(name="count")
        counts = counts.sort_values(["count", dim], ascending=[False, True], kind="mergesort")
        histograms[dim] = counts.reset_index(drop=True)
    return histograms


def namespace_slug(namespace):
    return namespace.replace(":", "-")


def write_outputs(records, series, termfreq, histograms, output_dir):
    """
    Écrit les fichiers d'analyse dans le dossier de sortie.

    Args:
        records (list): BibRecord
        series (dict): namespace -> liste de TimeSeriesPoint
        termfreq (TermFreq): Distribution des termes
        histograms (dict): dimension -> DataFrame de comptes
        output_dir (str | Path): Dossier de sortie

    Returns:
        list: Chemins écrits, dans un ordre fixe

    Raises:
        OutputError: Dossier impossible à créer ou fichier impossible à écrire
    """
    output = Path(output_dir)
    writers = [("bibliography.csv", lambda p: write_bibliography(records, p))]
    for namespace in sorted(series):
        stem = f"changes-{namespace_slug(namespace)}"
        points = series[namespace]
        writers.append((stem + ".csv", lambda p, s=points: _write_series_csv(s, p)))
        writers.append((stem + ".svg", lambda p, s=points, n=namespace: plot_changes(s, n, p)))
    writers.append(("term-frequency.csv", lambda p: _write_termfreq_csv(termfreq, p)))
    writers.append(("term-frequency.svg", lambda p: plot_term_frequency(termfreq, p)))
    for dim in COUNT_DIMENSIONS:
        writers.append((f"counts-by-{dim}.csv", lambda p, d=dim: _write_frame(histograms[d], p)))
        writers.append((f"counts-by-{dim}.svg", lambda p, d=dim: plot_counts(histograms[d], d, p)))

    try:
        output.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"Impossible de créer {output} ({e})") from e

    written = []
    try:
        for name, writer in writers:
            path = output / name
            # ajouté avant l'écriture : un fichier à moitié écrit est aussi supprimé
            written.append(path)
            writer(path)
    except OSError as e:
        for path in written:
            path.unlink(missing_ok=True)
        raise OutputError(f"Écriture impossible dans {output} ({e})") from e

    logger.info(f"{len(written)} fichiers écrits dans {output}")
    return written


def _write_frame(frame, path):
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")


def write_bibliography(records, path):
    _write_frame(records_frame(records), path)


def bibliography_csv(records):
    """Contenu de bibliography.csv sous forme de texte"""
    return records_frame(records).to_csv(index=False, lineterminator="\n")


def export_bibliography(records, path):
    """
    Écrit bibliography.csv seul (commande export-csv)

    Raises:
        OutputError: Fichier impossible à écrire
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        write_bibliography(records, path)
    except OSError as e:
        path.unlink(missing_ok=True)
        raise OutputError(f"Écriture impossible : {path} ({e})") from e
    return path


def _write_series_csv(points, path):
    frame = pd.DataFrame(
        [(p.bucket, p.count, p.cumulative) for p in points],
        columns=["bucket", "count", "cumulative"],
    )
    _write_frame(frame, path)


def _write_termfreq_csv(termfreq, path):
    frame = pd.DataFrame(
        [(rank, term, freq) for rank, (term, freq) in enumerate(termfreq.entries, start=1)],
        columns=["rank", "term", "frequency"],
    )
    _write_frame(frame, path)


def _save_svg(fig, path):
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASHSALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})


def plot_changes(points, namespace, path):
    """Barres mensuelles et courbe cumulée des modifications d'un namespace"""
    fig = Figure(figsize=(8, 4.5))
    ax = fig.subplots()
    ax.set_title(f"Wiki changes over time ({namespace})")
    ax.set_xlabel("month")
    ax.set_ylabel("changes")

    if points:
        x = np.arange(len(points))
        ax.bar(x, [p.count for p in points], color="#4c72b0", label="changes")
        ax.set_xticks(x)
        ax.set_xticklabels([p.bucket for p in points], rotation=45, ha="right", fontsize=7)
        cumulative = ax.twinx()
        cumulative.plot(x, [p.cumulative for p in points], color="#dd8452", label="cumulative")
        cumulative.set_ylabel("cumulative changes")
    else:
        ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes)

    fig.tight_layout()
    _save_svg(fig, path)


def plot_term_frequency(termfreq, path):
    """Fréquence par rang, en échelle linéaire et en log-log"""
    fig = Figure(figsize=(10, 4.5))
    linear, loglog = fig.subplots(1, 2)
    linear.set_title("Term frequency distribution")
    loglog.set_title("Term frequency distribution (log-log)")
    for ax in (linear, loglog):
        ax.set_xlabel("rank")
        ax.set_ylabel("frequency")

    if termfreq.entries:
        ranks = np.arange(1, len(termfreq.entries) + 1)
        freqs = np.array([freq for _, freq in termfreq.entries])
        linear.plot(ranks, freqs, color="#4c72b0")
        loglog.scatter(ranks, freqs, s=6, color="#4c72b0")
        loglog.set_xscale("log")
        loglog.set_yscale("log")
    else:
        for ax in (linear, loglog):
            ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes)

    fig.tight_layout()
    _save_svg(fig, path)


def plot_counts(frame, dim, path, top=30):
    """Barres horizontales des valeurs les plus fréquentes d'une dimension"""
    fig = Figure(figsize=(8, 6))
    ax = fig.subplots()
    ax.set_title(f"Publications by {dim}")
    ax.set_xlabel("publications")

    shown = frame.head(top)
    if not shown.empty:
        y = np.arange(len(shown))
        ax.barh(y, shown["count"].to_numpy(), color="#4c72b0")
        ax.set_yticks(y)
        ax.set_yticklabels([str(v) for v in shown[dim]], fontsize=7)
        ax.invert_yaxis()
    else:
        ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes)

    fig.tight_layout()
    _save_svg(fig, path)

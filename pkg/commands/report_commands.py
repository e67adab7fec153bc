# commands/report_commands.py
"""
Commandes de rapport : export de la bibliographie et analyse statistique
"""
import logging

import click

import config
from services.analysis_service import (
    bibliography_csv,
    build_bib_table,
    changes_over_time,
    count_by_dimension,
    export_bibliography,
    term_frequency,
    write_outputs,
)
from services.biblio_service import load_overrides, load_registry, match_sheet_venues
from services.pipeline_service import ingest_wiki
from utils.cli_utils import require_wiki_root, workers_option
from wiki_models import VenueRegistry

logger = logging.getLogger(__name__)

threshold_option = click.option(
    "--threshold", type=click.FloatRange(0, 1, min_open=True),
    default=config.JACCARD_THRESHOLD, show_default=True,
    help="Seuil de Jaccard pour accepter un rapprochement de venue.")
overrides_option = click.option(
    "--overrides", type=click.Path(exists=True, dir_okay=False, path_type=str),
    default=config.VENUE_OVERRIDES_CSV,
    help="CSV name,rank_or_hindex de corrections manuelles.")


def _registry(kind, path, issues):
    if not path:
        logger.info(f"Pas de registre {kind}, colonnes correspondantes laissées vides")
        return VenueRegistry(kind=kind)
    return load_registry(kind, path, issues=issues)


def _bib_records(snapshot, core, scimago, overrides, threshold):
    conferences = _registry("core-conference", core, snapshot.issues)
    journals = _registry("scimago-journal", scimago, snapshot.issues)
    matches = match_sheet_venues(snapshot.sheets.reading, snapshot.display_names,
                                 conferences, journals, threshold)
    return build_bib_table(snapshot.sheets.reading, matches, snapshot.display_names,
                           overrides=load_overrides(overrides))


@click.command("export-csv")
@click.argument("wiki_dir", type=click.Path(file_okay=False, path_type=str))
@click.option("--core", required=True, type=click.Path(exists=True, dir_okay=False, path_type=str),
              help="Registre CORE des conférences (name,acronym,rank).")
@click.option("--scimago", required=True, type=click.Path(exists=True, dir_okay=False, path_type=str),
              help="Registre Scimago des revues (title,h_index).")
@threshold_option
@overrides_option
@click.option("-o", "--output", "output_file", type=click.Path(dir_okay=False, path_type=str),
              help="Fichier CSV de sortie (sortie standard si absent).")
@click.pass_context
@require_wiki_root
def export_csv_command(ctx, root, core, scimago, threshold, overrides, output_file):
    """Exporte la table bibliographique des fiches de lecture en CSV."""
    snapshot = ingest_wiki(root, workers=workers_option(ctx))
    records = _bib_records(snapshot, core, scimago, overrides, threshold)
    if output_file is None:
        click.echo(bibliography_csv(records), nl=False)
    else:
        export_bibliography(records, output_file)
        click.echo(f"{len(records)} publications exportées dans {output_file}", err=True)


@click.command("analyze")
@click.argument("wiki_dir", type=click.Path(file_okay=False, path_type=str))
@click.option("--namespace", "namespaces", multiple=True, default=[config.DEFAULT_NAMESPACE],
              show_default=True, help="Namespace suivi dans le temps (option répétable).")
@click.option("--output", "output_dir", default=config.OUTPUT_DIR, show_default=True,
              type=click.Path(file_okay=False, path_type=str), help="Dossier de sortie.")
@click.option("--core", default=config.CORE_CSV,
              type=click.Path(exists=True, dir_okay=False, path_type=str),
              help="Registre CORE (optionnel).")
@click.option("--scimago", default=config.SCIMAGO_CSV,
              type=click.Path(exists=True, dir_okay=False, path_type=str),
              help="Registre Scimago (optionnel).")
@threshold_option
@overrides_option
@click.pass_context
@require_wiki_root
def analyze_command(ctx, root, namespaces, output_dir, core, scimago, threshold, overrides):
    """Écrit la bibliographie, l'évolution des modifications et la fréquence des termes."""
    snapshot = ingest_wiki(root, workers=workers_option(ctx))
    records = _bib_records(snapshot, core, scimago, overrides, threshold)

    series = {}
    for namespace in namespaces:
        prefix = namespace.strip().strip(":").lower()
        if not prefix:
            raise click.BadParameter("namespace vide", param_hint="--namespace")
        series[prefix] = changes_over_time(snapshot.pages, prefix)

    written = write_outputs(
        records,
        series,
        term_frequency(snapshot.sheets.reading),
        count_by_dimension(records),
        output_dir,
    )
    for path in written:
        click.echo(str(path))


report_commands = [export_csv_command, analyze_command]

# commands/wiki_commands.py
"""
Commandes de structure du wiki : scaffold, lint, backlinks, index
"""
import json
import logging

import click

import config
from services.graph_service import backlinks, entity_index
from services.lint_service import count_by_severity, lint
from services.pipeline_service import ingest_wiki
from services.wiki_service import scaffold
from utils.cli_utils import handle_domain_errors, require_wiki_root, workers_option
from utils.slug_utils import normalize_link_target
from wiki_models import ENTITY_KINDS

logger = logging.getLogger(__name__)

wiki_dir_argument = click.argument(
    "wiki_dir", type=click.Path(file_okay=False, path_type=str))


@click.command("scaffold")
@click.argument("wiki_dir", type=click.Path(path_type=str))
@click.option("--program", default=config.PROGRAM_NAME, show_default=True,
              help="Nom du programme d'études (page <programme>:start).")
@handle_domain_errors
def scaffold_command(wiki_dir, program):
    """Crée la structure de pages du wiki dans WIKI_DIR (absent ou vide)."""
    report = scaffold(wiki_dir, program_name=program)
    for relative in report.pages:
        click.echo(relative)
    click.echo(f"{len(report.pages)} pages, {len(report.directories)} dossiers, "
               f"{len(report.templates)} modèles", err=True)


@click.command("lint")
@wiki_dir_argument
@click.pass_context
@require_wiki_root
def lint_command(ctx, root):
    """Vérifie les conventions du wiki ; code 1 si une erreur est trouvée."""
    snapshot = ingest_wiki(root, workers=workers_option(ctx))
    diagnostics = lint(snapshot.pages, snapshot.graph, snapshot.sheets)
    for diagnostic in diagnostics:
        click.echo(diagnostic.render(), err=True)

    counts = count_by_severity(diagnostics)
    click.echo(", ".join(f"{counts[s]} {s}" for s in counts), err=True)
    if counts["error"]:
        ctx.exit(1)


@click.command("backlinks")
@wiki_dir_argument
@click.argument("page_id")
@click.pass_context
@require_wiki_root
def backlinks_command(ctx, root, page_id):
    """Liste les pages qui pointent vers PAGE_ID, une par ligne."""
    target = normalize_link_target(page_id)
    if target is None:
        raise click.BadParameter(f"identifiant inutilisable : {page_id!r}", param_hint="PAGE_ID")
    snapshot = ingest_wiki(root, workers=workers_option(ctx))
    for source in backlinks(snapshot.graph, target):
        click.echo(source)


@click.command("index")
@wiki_dir_argument
@click.argument("kind", type=click.Choice(ENTITY_KINDS))
@click.pass_context
@require_wiki_root
def index_command(ctx, root, kind):
    """Index d'une catégorie d'entités (JSON : entité -> fiches de lecture)."""
    snapshot = ingest_wiki(root, workers=workers_option(ctx))
    click.echo(json.dumps(entity_index(snapshot.graph, kind), indent=2, ensure_ascii=False))


wiki_commands = [scaffold_command, lint_command, backlinks_command, index_command]

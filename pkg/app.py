import logging
import sys

import click

import config
from commands.report_commands import report_commands
from commands.wiki_commands import wiki_commands

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


_handler = None


def configure_logging(level):
    """Journalisation vers la sortie d'erreur, format commun à tous les modules"""
    global _handler
    root = logging.getLogger()
    if _handler is not None:
        root.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(_handler)
    root.setLevel(level)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--workers", type=click.IntRange(min=1), default=config.WORKERS, show_default=True,
              help="Nombre de threads pour lire et analyser les pages.")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False),
              default=config.LOG_LEVEL.upper(), show_default=True,
              help="Niveau de journalisation (sortie d'erreur).")
@click.pass_context
def cli(ctx, workers, log_level):
    """Outils pour un wiki de recherche : structure, fiches, liens et statistiques."""
    configure_logging(log_level.upper())
    ctx.ensure_object(dict)
    ctx.obj["workers"] = workers


# Enregistrer les commandes
for command in wiki_commands + report_commands:
    cli.add_command(command)


def run(argv=None):
    """
    Exécute une commande et renvoie son code de sortie au lieu de quitter

    Args:
        argv (list, optional): Arguments (sys.argv[1:] par défaut)

    Returns:
        int: 0 en cas de succès, 1 pour une erreur, 2 pour un usage incorrect
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = cli.main(args=args, prog_name="wiki-sheets", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Interrompu", err=True)
        return 1
    return result if isinstance(result, int) else 0


if __name__ == '__main__':
    sys.exit(run())

"""
Outils partagés par les commandes de la ligne de commande
"""
import logging
from functools import wraps
from pathlib import Path

import click

from utils.errors import WikiSheetsError
from wiki_models import WikiRoot

logger = logging.getLogger(__name__)


def verify_wiki_root(path):
    """
    Vérifie qu'un dossier contient un wiki (dossier des pages présent)

    Args:
        path (str | Path): Racine supposée du wiki

    Returns:
        WikiRoot | None: La racine, ou None si ce n'est pas un wiki
    """
    root = WikiRoot(root_path=Path(path))
    if not root.pages_path.is_dir():
        return None
    return root


def require_wiki_root(command_function):
    """
    Décorateur de commande : remplace l'argument wiki_dir par un WikiRoot
    validé et convertit les erreurs métier en ClickException (code 1)
    """
    @wraps(command_function)
    def wrapper(*args, wiki_dir, **kwargs):
        root = verify_wiki_root(wiki_dir)
        if root is None:
            raise click.ClickException(f"Pas de wiki dans {wiki_dir} (dossier des pages absent)")
        try:
            return command_function(*args, root=root, **kwargs)
        except WikiSheetsError as e:
            logger.debug("Erreur métier", exc_info=True)
            raise click.ClickException(str(e)) from e

    return wrapper


def handle_domain_errors(command_function):
    """Même conversion d'erreurs, pour les commandes qui ne lisent pas de wiki"""
    @wraps(command_function)
    def wrapper(*args, **kwargs):
        try:
            return command_function(*args, **kwargs)
        except WikiSheetsError as e:
            raise click.ClickException(str(e)) from e

    return wrapper


def workers_option(ctx):
    """Taille du pool choisie sur le groupe de commandes (None = configuration)"""
    return (ctx.obj or {}).get("workers")

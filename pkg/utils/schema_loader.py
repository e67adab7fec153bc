"""
Chargement des schémas JSON (structure du wiki, libellés des fiches,
règles de lint) et des modèles de pages
"""
import json
import logging
from functools import lru_cache
from pathlib import Path

logger = logging.getLogger(__name__)

SCHEMAS_DIR = Path(__file__).resolve().parent.parent / "schemas"
TEMPLATES_DIR = SCHEMAS_DIR / "templates"


def get_schema_path(filename):
    """Chemin d'un fichier du dossier schemas"""
    return SCHEMAS_DIR / filename


def load_schema(filename):
    """
    Charge un schéma JSON du dossier schemas

    Args:
        filename (str): Nom du fichier, ex. wiki_structure.json

    Returns:
        dict: Contenu du schéma

    Raises:
        RuntimeError: Schéma absent ou JSON invalide ; le paquet est alors incomplet
    """
    path = get_schema_path(filename)
    try:
        with path.open("r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        logger.error(f"Schéma '{filename}' introuvable à {path}")
        raise RuntimeError(f"Schéma manquant : {path}") from e
    except json.JSONDecodeError as e:
        logger.error(f"Format JSON invalide dans le schéma '{filename}'")
        raise RuntimeError(f"Schéma invalide : {path} ({e})") from e


@lru_cache(maxsize=None)
def load_template(name):
    """Texte d'un modèle de page (schemas/templates)"""
    return (TEMPLATES_DIR / name).read_text(encoding="utf-8")


WIKI_STRUCTURE = load_schema("wiki_structure.json")
SHEET_FIELDS = load_schema("sheet_fields.json")
LINT_RULES = load_schema("lint_rules.json")

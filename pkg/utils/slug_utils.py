"""
Règles de nommage des pages : slugs et identifiants
"""
import re

from utils.errors import SlugError

SLUG_PATTERN = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")
_SEPARATORS = re.compile(r"[^a-z0-9]+")
_EXTERNAL = re.compile(r"^([a-z][a-z0-9+.-]*://|mailto:|www\.)", re.IGNORECASE)


def slugify(title):
    """
    Construit le nom de page d'un titre : minuscules, séparées par des tirets.

    Tout caractère hors [a-z0-9] (accents compris) sert de séparateur.

    Args:
        title (str): Titre de la publication, de l'auteur, etc.

    Returns:
        str: Le slug

    Raises:
        SlugError: Si le titre ne contient aucun caractère alphanumérique
    """
    slug = _SEPARATORS.sub("-", title.lower()).strip("-")
    if not slug:
        raise SlugError(f"Slug vide pour le titre {title!r}")
    return slug


def is_valid_slug(segment):
    return bool(SLUG_PATTERN.match(segment))


def is_valid_page_id(page_id):
    """Vérifie que chaque segment de l'identifiant est un slug valide"""
    return bool(page_id) and all(is_valid_slug(s) for s in page_id.split(":"))


def is_external_target(target):
    return bool(_EXTERNAL.match(target.strip()))


def normalize_link_target(target):
    """
    Normalise la cible d'un lien interne.

    Supprime ancre et paramètres, retire les ':' aux extrémités et passe chaque
    segment par slugify ; les segments vides sont ignorés.

    Args:
        target (str): Cible brute, telle qu'écrite dans [[cible|libellé]]

    Returns:
        str | None: Identifiant normalisé, ou None si rien d'utilisable
    """
    target = target.split("#", 1)[0].split("?", 1)[0].strip().strip(":")
    segments = []
    for segment in target.split(":"):
        try:
            segments.append(slugify(segment))
        except SlugError:
            continue
    return ":".join(segments) or None


def namespace_path(page_id):
    """Segments du chemin relatif d'une page (sans extension)"""
    return page_id.split(":")


def is_under(page_id, prefix):
    """Vrai si la page est le préfixe lui-même ou se trouve sous celui-ci"""
    return page_id == prefix or page_id.startswith(prefix + ":")

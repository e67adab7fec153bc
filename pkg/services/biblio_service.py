"""
Normalisation des venues : classement CORE et h-index Scimago
"""
import logging
import re

import pandas as pd

from utils.errors import ConferenceNameError, RegistryError
from wiki_models import RegistryEntry, VenueMatch, VenueRegistry

logger = logging.getLogger(__name__)

REGISTRY_COLUMNS = {
    "core-conference": ("name", "acronym", "rank"),
    "scimago-journal": ("title", "h_index"),
}
OVERRIDE_COLUMNS = ("name", "rank_or_hindex")

SPELLED_ORDINALS = (
    "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth",
    "ninth", "tenth", "eleventh", "twelfth", "thirteenth", "fourteenth", "fifteenth",
    "sixteenth", "seventeenth", "eighteenth", "nineteenth", "twentieth",
)

_PROCEEDINGS = re.compile(r"^\s*proceedings\s+of(?:\s+the)?\b\s*", re.IGNORECASE)
_ORDINALS = re.compile(
    r"\b(?:\d+(?:st|nd|rd|th)|" + "|".join(SPELLED_ORDINALS) + r")\b", re.IGNORECASE)
_TOKENS = re.compile(r"[a-z0-9]+")


def _report(issues, message, level=logging.WARNING):
    logger.log(level, message)
    if issues is not None:
        issues.append(message)


def tokenize(text):
    """Suites alphanumériques en minuscules"""
    return set(_TOKENS.findall(text.lower()))


def load_registry(kind, path, issues=None):
    """
    Charge un registre de venues au format CSV.

    CORE : en-tête name,acronym,rank. Scimago : en-tête title,h_index.

    Args:
        kind (str): 'core-conference' ou 'scimago-journal'
        path (str | Path): Fichier CSV
        issues (list, optional): Collecte des lignes rejetées et des doublons

    Returns:
        VenueRegistry: Le registre

    Raises:
        RegistryError: Fichier absent, illisible ou sans les colonnes attendues
    """
    if kind not in REGISTRY_COLUMNS:
        raise RegistryError(f"Type de registre inconnu : {kind}")
    columns = REGISTRY_COLUMNS[kind]

    def on_bad_line(fields):
        _report(issues, f"{path}: ligne mal formée ignorée ({','.join(fields)})")
        return None

    try:
        frame = pd.read_csv(
            path, dtype=str, keep_default_na=False,
            engine="python", on_bad_lines=on_bad_line, encoding="utf-8",
        )
    except FileNotFoundError as e:
        raise RegistryError(f"Registre introuvable : {path}") from e
    except (OSError, UnicodeDecodeError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise RegistryError(f"Registre illisible : {path} ({e})") from e

    header = [str(c).strip() for c in frame.columns]
    if list(header[:len(columns)]) != list(columns):
        raise RegistryError(f"{path}: en-tête attendu {','.join(columns)}, trouvé {','.join(header)}")
    frame.columns = header

    registry = VenueRegistry(kind=kind)
    seen = set()
    for number, row in enumerate(frame.itertuples(index=False), start=2):
        values = [("" if pd.isna(v) else str(v)).strip() for v in row[:len(columns)]]
        entry = _registry_entry(kind, values)
        if entry is None:
            _report(issues, f"{path}:{number}: ligne invalide ignorée ({','.join(values)})")
            continue
        key = entry.name.lower()
        if key in seen:
            _report(issues, f"{path}:{number}: doublon '{entry.name}', première occurrence gardée",
                    level=logging.INFO)
            continue
        seen.add(key)
        registry.entries.append(entry)

    logger.info(f"Registre {kind} : {len(registry)} entrées depuis {path}")
    return registry


def _registry_entry(kind, values):
    if kind == "core-conference":
        name, acronym, rank = values
        if not name or not rank:
            return None
        return RegistryEntry(name=name, acronym=acronym or None, value=rank)

    title, h_index = values
    if not title or not h_index.isdigit():
        return None
    return RegistryEntry(name=title, acronym=None, value=str(int(h_index)))


def load_overrides(path):
    """
    Charge les corrections manuelles (name,rank_or_hindex)

    Returns:
        dict: Nom en minuscules -> valeur
    """
    if path is None:
        return {}
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except FileNotFoundError as e:
        raise RegistryError(f"Fichier de corrections introuvable : {path}") from e
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise RegistryError(f"Fichier de corrections illisible : {path} ({e})") from e
    if list(frame.columns[:2]) != list(OVERRIDE_COLUMNS):
        raise RegistryError(f"{path}: en-tête attendu {','.join(OVERRIDE_COLUMNS)}")
    return {name.strip().lower(): value.strip()
            for name, value in zip(frame["name"], frame["rank_or_hindex"])
            if name.strip() and value.strip()}


def _extraction_step(text):
    text = _PROCEEDINGS.sub("", text)
    text = _ORDINALS.sub(" ", text)
    text = text.split(",", 1)[0]
    return " ".join(text.split())


def extract_conference_name(proceedings_text):
    """
    Déduit le nom de la conférence d'une entrée d'actes.

    Retire 'Proceedings of (the)', les ordinaux (41st, Ninth...), coupe à la
    première virgule ; répété jusqu'à stabilité.

    Args:
        proceedings_text (str): Texte de l'entrée d'actes

    Returns:
        str: Nom de la conférence

    Raises:
        ConferenceNameError: Si le résultat est vide
    """
    text = " ".join(proceedings_text.split())
    while True:
        cleaned = _extraction_step(text)
        if cleaned == text:
            break
        text = cleaned
    if not text:
        raise ConferenceNameError(f"Nom de conférence vide pour {proceedings_text!r}")
    return text


def jaccard(a, b):
    """Indice de Jaccard |a ∩ b| / |a ∪ b| ; 0 si les deux ensembles sont vides"""
    a, b = set(a), set(b)
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)


def score_entry(name, tokens, entry):
    """
    Score d'une entrée du registre pour un nom donné

    Returns:
        tuple: (score, taille de l'intersection)
    """
    entry_tokens = tokenize(entry.name)
    overlap = len(tokens & entry_tokens)
    if entry.acronym and entry.acronym.strip().lower() == name.strip().lower():
        return 1.0, overlap
    return jaccard(tokens, entry_tokens), overlap


def match_venue(name, registry, threshold, extracted_name=None):
    """
    Cherche l'entrée du registre la plus proche d'un nom de venue.

    Meilleur score de Jaccard (acronyme identique = 1.0), puis plus grande
    intersection, puis nom d'entrée le plus petit dans l'ordre lexicographique.

    Args:
        name (str): Nom à rapprocher
        registry (VenueRegistry): Registre cible
        threshold (float): Seuil d'acceptation, dans ]0, 1]
        extracted_name (str, optional): Nom extrait, si différent du texte brut

    Returns:
        VenueMatch: Le meilleur candidat, accepté ou non
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"Seuil hors de ]0, 1] : {threshold}")
    query = extracted_name if extracted_name is not None else name
    tokens = tokenize(query)

    best, best_key = None, None
    for entry in registry.entries:
        score, overlap = score_entry(query, tokens, entry)
        key = (-score, -overlap, entry.name)
        if best_key is None or key < best_key:
            best, best_key = entry, key

    score = -best_key[0] if best is not None else 0.0
    return VenueMatch(
        raw=name,
        extracted_name=query,
        matched_entry=best,
        score=score,
        accepted=best is not None and score >= threshold,
        kind=registry.kind,
    )


def match_sheet_venues(sheets, display_names, conferences, journals, threshold):
    """
    Rapproche la venue de chaque fiche de lecture de son registre

    Args:
        sheets (dict): Identifiant -> ReadingSheet
        display_names (dict): Identifiant d'entité -> nom affiché
        conferences (VenueRegistry): Registre CORE
        journals (VenueRegistry): Registre Scimago
        threshold (float): Seuil de Jaccard

    Returns:
        dict: Identifiant de fiche -> VenueMatch (fiches sans venue absentes)
    """
    matches = {}
    for page_id in sorted(sheets):
        sheet = sheets[page_id]
        if not sheet.venue:
            continue
        raw = display_names.get(sheet.venue, sheet.venue)
        if sheet.venue_kind == "conference":
            try:
                extracted = extract_conference_name(raw)
            except ConferenceNameError:
                extracted = raw.strip()
            matches[page_id] = match_venue(raw, conferences, threshold, extracted_name=extracted)
        else:
            matches[page_id] = match_venue(raw, journals, threshold, extracted_name=raw.strip())
    return matches

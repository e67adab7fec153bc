"""
Exceptions levées par les services
"""


class WikiSheetsError(Exception):
    """Erreur de base de l'outil"""


class WikiLoadError(WikiSheetsError):
    """Racine du wiki absente ou illisible"""


class ScaffoldError(WikiSheetsError):
    """Création du squelette refusée"""


class SlugError(WikiSheetsError, ValueError):
    """Titre sans aucun caractère alphanumérique"""


class ConferenceNameError(WikiSheetsError, ValueError):
    """Nom de conférence vide après nettoyage"""


class RegistryError(WikiSheetsError):
    """Registre CORE / Scimago introuvable ou invalide"""


class OutputError(WikiSheetsError):
    """Écriture impossible dans le dossier de sortie"""

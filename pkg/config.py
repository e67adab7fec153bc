"""
Configuration centralisée de l'outil
"""
import os
from dotenv import load_dotenv

# Charger les variables d'environnement
load_dotenv()

# Structure du wiki sur disque
PAGES_DIR = os.getenv("WIKI_PAGES_DIR", "pages")
META_DIR = os.getenv("WIKI_META_DIR", "meta")

# Nombre de threads pour la lecture et l'analyse des pages
WORKERS = int(os.getenv("WIKI_WORKERS", "4"))

# Normalisation des venues
JACCARD_THRESHOLD = float(os.getenv("JACCARD_THRESHOLD", "0.5"))
CORE_CSV = os.getenv("CORE_CSV")
SCIMAGO_CSV = os.getenv("SCIMAGO_CSV")
VENUE_OVERRIDES_CSV = os.getenv("VENUE_OVERRIDES_CSV")

# Analyse
OUTPUT_DIR = os.getenv("OUTPUT_DIR", "output")
DEFAULT_NAMESPACE = os.getenv("ANALYZE_NAMESPACE", "phd:bibliography")

# Squelette
PROGRAM_NAME = os.getenv("WIKI_PROGRAM", "program")

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

"""
Fixtures partagées : copie du wiki de référence et registres
"""
import os
import shutil
from pathlib import Path

import pytest

from services.pipeline_service import ingest_wiki
from wiki_models import WikiRoot

FIXTURES = Path(__file__).parent / "fixtures"
WIKI_FIXTURE = FIXTURES / "wiki"
CORE_CSV = FIXTURES / "registries" / "core.csv"
SCIMAGO_CSV = FIXTURES / "registries" / "scimago.csv"
OVERRIDES_CSV = FIXTURES / "registries" / "overrides.csv"
GOLDEN_BIBLIOGRAPHY = FIXTURES / "golden" / "bibliography.csv"

# 2018-01-15 00:00 UTC : date des pages sans journal de modifications
FIXTURE_MTIME = 1515974400


@pytest.fixture
def wiki_dir(tmp_path):
    """Copie du wiki de référence, dates de fichiers figées"""
    target = tmp_path / "wiki"
    shutil.copytree(WIKI_FIXTURE, target)
    for path in target.rglob("*"):
        if path.is_file():
            os.utime(path, (FIXTURE_MTIME, FIXTURE_MTIME))
    return target


@pytest.fixture
def wiki_root(wiki_dir):
    return WikiRoot(root_path=wiki_dir)


@pytest.fixture
def snapshot(wiki_root):
    return ingest_wiki(wiki_root, workers=2)


def write_page(root, page_id, text):
    """Écrit une page sous root/pages à partir de son identifiant"""
    path = Path(root) / "pages" / Path(*page_id.split(":")).with_suffix(".txt")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture
def make_wiki(tmp_path):
    """Construit un wiki minimal à partir d'un dict identifiant -> texte"""
    def build(pages, name="mini"):
        root = tmp_path / name
        (root / "meta").mkdir(parents=True, exist_ok=True)
        (root / "pages").mkdir(parents=True, exist_ok=True)
        for page_id, text in pages.items():
            write_page(root, page_id, text)
        return WikiRoot(root_path=root)

    return build


@pytest.fixture
def registry_paths():
    return {"core": CORE_CSV, "scimago": SCIMAGO_CSV, "overrides": OVERRIDES_CSV}


@pytest.fixture
def golden_bibliography():
    return GOLDEN_BIBLIOGRAPHY.read_bytes()

"""
Service de lecture et de création d'un wiki sur disque (pages + journaux)
"""
import logging
import os
import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import config
from utils.errors import ScaffoldError, SlugError, WikiLoadError
from utils.schema_loader import WIKI_STRUCTURE, load_template
from utils.slug_utils import namespace_path, slugify
from wiki_models import CHANGE_TYPES, Revision, ScaffoldReport, WikiPage

logger = logging.getLogger(__name__)

PAGE_SUFFIX = ".txt"
CHANGES_SUFFIX = ".changes"
TEMPLATE_NAME = "_template.txt"


def _report(issues, message):
    logger.warning(message)
    if issues is not None:
        issues.append(message)


def _is_hidden(relative):
    """Fichiers et dossiers commençant par '_' ou '.' (modèles, fichiers cachés)"""
    return any(part.startswith(("_", ".")) for part in relative.parts)


def page_id_from_path(relative):
    """
    Dérive l'identifiant d'une page de son chemin relatif à pages/

    Args:
        relative (Path): Chemin relatif, ex. phd/bibliography/x.txt

    Returns:
        str: Identifiant en minuscules, ex. phd:bibliography:x
    """
    return raw_page_id(relative).lower()


def raw_page_id(relative):
    """Identifiant tel qu'écrit sur disque, casse conservée"""
    return ":".join(list(relative.parts[:-1]) + [relative.stem])


def load_wiki(root, workers=None, issues=None):
    """
    Charge toutes les pages d'un wiki.

    Les révisions viennent du journal meta/<chemin>.changes ; à défaut, une
    révision 'edit' synthétique est créée à la date de modification du fichier.

    Args:
        root (WikiRoot): Racine du wiki
        workers (int, optional): Nombre de threads de lecture
        issues (list, optional): Collecte des problèmes non bloquants

    Returns:
        list: Pages triées par identifiant

    Raises:
        WikiLoadError: Si la racine ou le dossier des pages n'existe pas
    """
    root_path = Path(root.root_path)
    if not root_path.is_dir():
        raise WikiLoadError(f"Racine du wiki introuvable : {root_path}")
    pages_path = root.pages_path
    if not pages_path.is_dir():
        raise WikiLoadError(f"Dossier des pages introuvable : {pages_path}")

    files = sorted(
        path for path in pages_path.rglob("*" + PAGE_SUFFIX)
        if path.is_file() and not _is_hidden(path.relative_to(pages_path))
    )

    workers = workers or config.WORKERS
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        loaded = list(executor.map(lambda p: _read_page(root, p), files))

    pages = {}
    for path, (result, page_issues) in zip(files, loaded):
        for message in page_issues:
            _report(issues, message)
        if result is None:
            continue
        if result.id in pages:
            _report(issues, f"{path}: identifiant '{result.id}' déjà utilisé par "
                            f"{pages[result.id].source_path}, fichier ignoré")
            continue
        pages[result.id] = result

    logger.info(f"{len(pages)} pages chargées depuis {pages_path}")
    return [pages[page_id] for page_id in sorted(pages)]


def _read_page(root, path):
    """
    Lit une page sans lever d'exception.

    Returns:
        tuple: (WikiPage ou None, messages à signaler)
    """
    relative = path.relative_to(root.pages_path)
    page_issues = []
    try:
        raw_text = path.read_text(encoding="utf-8")
        mtime = path.stat().st_mtime
    except (OSError, UnicodeDecodeError) as e:
        page_issues.append(f"{path}: lecture impossible ({e}), page ignorée")
        return None, page_issues

    page_id = page_id_from_path(relative)
    changes_path = root.meta_path / relative.with_suffix(CHANGES_SUFFIX)
    revisions = _parse_changes_file(changes_path, page_issues, quiet=True)
    if not revisions:
        revisions = [Revision(timestamp=max(1, int(mtime)), change_type="edit")]
    page = WikiPage(id=page_id, raw_text=raw_text, revisions=revisions,
                    source_path=path, raw_id=raw_page_id(relative))
    return page, page_issues


def load_changes(root, page_id, issues=None):
    """
    Lit le journal de modifications d'une page

    Args:
        root (WikiRoot): Racine du wiki
        page_id (str): Identifiant de la page
        issues (list, optional): Collecte des lignes mal formées

    Returns:
        list: Révisions triées par date croissante (vide si pas de journal)
    """
    relative = Path(*namespace_path(page_id)).with_suffix(CHANGES_SUFFIX)
    return _parse_changes_file(root.meta_path / relative, issues)


def _parse_changes_file(path, issues, quiet=False):
    # quiet : les messages sont seulement collectés, l'appelant les journalise
    report = (lambda _, message: issues.append(message)) if quiet else _report
    if not path.is_file():
        return []
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as e:
        report(issues, f"{path}: journal illisible ({e})")
        return []

    revisions = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        revision = parse_change_line(line)
        if revision is None:
            report(issues, f"{path}:{number}: ligne de journal mal formée, ignorée")
            continue
        revisions.append(revision)

    # Tri stable : à date égale, l'ordre des lignes est conservé
    revisions.sort(key=lambda r: r.timestamp)
    return revisions


def parse_change_line(line):
    """
    Analyse une ligne 'date<TAB>ip<TAB>type<TAB>page<TAB>utilisateur<TAB>résumé'

    Returns:
        Revision | None: None si la ligne est mal formée
    """
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) < 4:
        return None
    try:
        timestamp = int(fields[0].strip())
    except ValueError:
        return None
    change_type = CHANGE_TYPES.get(fields[2].strip())
    if timestamp <= 0 or change_type is None:
        return None
    user = fields[4].strip() if len(fields) > 4 else ""
    summary = fields[5].strip() if len(fields) > 5 else ""
    return Revision(timestamp=timestamp, change_type=change_type, user=user, summary=summary)


def _render(template_name, replacements):
    text = load_template(template_name)
    for key, value in replacements.items():
        text = text.replace(key, value)
    return text


def _id_to_path(page_id):
    return Path(*namespace_path(page_id))


def scaffold(target_dir, program_name=None):
    """
    Crée la structure de pages du wiki de recherche dans un dossier vide.

    L'arborescence est préparée dans un dossier temporaire voisin puis
    déplacée d'un bloc : un échec ne laisse aucune écriture partielle.

    Args:
        target_dir (str | Path): Dossier cible (absent ou vide)
        program_name (str, optional): Nom du programme (master, doctorat...)

    Returns:
        ScaffoldReport: Fichiers et dossiers créés, relatifs à pages/

    Raises:
        ScaffoldError: Si la cible n'est pas vide ou si le nom est invalide
    """
    target = Path(target_dir)
    if target.exists() and (not target.is_dir() or any(target.iterdir())):
        raise ScaffoldError(f"Le dossier cible n'est pas vide : {target}")

    program_name = program_name or config.PROGRAM_NAME
    try:
        program = slugify(program_name)
    except SlugError as e:
        raise ScaffoldError(f"Nom de programme invalide : {program_name!r}") from e
    if program in WIKI_STRUCTURE["reserved"]:
        raise ScaffoldError(f"Le programme '{program}' masquerait une page existante")

    replacements = {"@PROGRAM_TITLE@": program_name.strip(), "@PROGRAM@": program}
    report = ScaffoldReport(root=target)

    target.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".scaffold-", dir=target.parent))
    try:
        staging.chmod(0o755)
        pages_root = staging / config.PAGES_DIR
        (staging / config.META_DIR).mkdir(parents=True)

        for namespace in WIKI_STRUCTURE["namespaces"]:
            relative = _id_to_path(namespace.replace("@PROGRAM@", program))
            (pages_root / relative).mkdir(parents=True, exist_ok=True)
            report.directories.append(relative.as_posix())

        for page in WIKI_STRUCTURE["pages"]:
            page_replacements = dict(replacements)
            page_replacements["@TITLE@"] = page.get("title", "")
            page_replacements["@NAMESPACE@"] = page.get("namespace", "")
            relative = _id_to_path(page["id"].replace("@PROGRAM@", program)).with_suffix(PAGE_SUFFIX)
            path = pages_root / relative
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(_render(page["template"], page_replacements), encoding="utf-8")
            report.pages.append(relative.as_posix())

        for entry in WIKI_STRUCTURE["namespace_templates"]:
            relative = _id_to_path(entry["namespace"]) / TEMPLATE_NAME
            (pages_root / relative).write_text(load_template(entry["template"]), encoding="utf-8")
            report.templates.append(relative.as_posix())

        if target.exists():
            target.rmdir()
        os.replace(staging, target)
    except Exception:
        shutil.rmtree(staging, ignore_errors=True)
        raise

    logger.info(f"Squelette créé dans {target} : {len(report.pages)} pages, "
                f"{len(report.directories)} dossiers")
    return report

#!/usr/bin/env python3
"""Build the desk-scale evaluation corpora under data/desk/.

Sentences come from the translation catalogs shipped inside freely licensed
Python packages (Django, Plone, Wagtail, pretix, Indico, django-allauth,
Sphinx, Apache Superset, JupyterLab language packs). Each translated
message is one line; English lines come from the catalogs' source strings.
Languages with fewer than MIN_SENTENCES usable lines are not written.

Usage:
    pip download --no-deps -d wheels django plone.app.locales wagtail pretix \
        indico django-allauth sphinx apache-superset \
        jupyterlab-language-pack-fr-FR jupyterlab-language-pack-es-ES \
        jupyterlab-language-pack-de-DE jupyterlab-language-pack-ru-RU
    python3 tools/build_desk_corpora.py wheels data/desk

Only the standard library is used.
"""

import argparse
import gettext
import html
import io
import pathlib
import random
import re
import sys
import unicodedata
import zipfile

LANGUAGES = {
    # tag: catalog locale names that feed it
    "de": {"de", "de_DE"},
    "en": set(),  # built from source strings
    "es": {"es", "es_ES"},
    "fr": {"fr", "fr_FR"},
    "hi": {"hi", "hi_IN"},
    "ru": {"ru", "ru_RU"},
    "uk": {"uk", "uk_UA"},
}

MIN_WORDS = 3
MIN_CHARS = 60
MIN_SENTENCES = 2000
MAX_PER_LANGUAGE = 20000
SEED = 20170000

PLACEHOLDER = re.compile(
    r"%\([^)]*\)[-#0 +]*\d*(?:\.\d+)?[sdifrx]"  # %(name)s
    r"|%[-#0 +]*\d*(?:\.\d+)?[sdifrx%]"          # %s %d %%
    r"|%\d+"                                      # %1
    r"|\$\{[^}]*\}"                               # ${name}
    r"|\{\{[^}]*\}\}"                             # {{ name }}
    r"|\{[^}]*\}"                                 # {0} {name}
    r"|<[^>]+>"                                   # markup
)
IDENTIFIER = re.compile(r"^[a-z0-9]+(?:[_.][a-z0-9]+)+$")


def parse_po(text, defaults=None):
    """Yields (msgid, msgstr) pairs; plural forms use the first string.

    Catalogs that key messages by identifier keep the English text in a
    `#. Default: "..."` comment; those are appended to `defaults`.
    """
    entries = []
    msgid, msgstr, current = None, None, None
    default = None

    def flush():
        if msgid is not None:
            entries.append(("".join(msgid), "".join(msgstr or [])))

    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#. Default:"):
            default = [unquote(line[len("#. Default:"):])]
            continue
        if default is not None and line.startswith('#. "'):
            default.append(unquote(line[3:]))
            continue
        if default is not None and defaults is not None:
            defaults.append("".join(default))
        default = None
        if not line or line.startswith("#"):
            continue
        if line.startswith("msgid "):
            flush()
            msgid, msgstr, current = [unquote(line[6:])], None, "id"
        elif line.startswith("msgid_plural"):
            current = "plural"
        elif line.startswith("msgstr"):
            if msgstr is None:
                msgstr, current = [unquote(line.split(" ", 1)[1])], "str"
            else:
                current = "skip"
        elif line.startswith('"'):
            if current == "id":
                msgid.append(unquote(line))
            elif current == "str":
                msgstr.append(unquote(line))
    flush()
    return entries


def unquote(s):
    s = s.strip()
    if len(s) >= 2 and s[0] == '"' and s[-1] == '"':
        s = s[1:-1]
    return s.encode("utf-8").decode("unicode_escape").encode("latin-1").decode("utf-8", "replace")


def parse_mo(data):
    try:
        catalog = gettext.GNUTranslations(io.BytesIO(data))._catalog
    except (OSError, ValueError):
        return
    for key, value in catalog.items():
        msgid = key[0] if isinstance(key, tuple) else key
        if isinstance(key, tuple) and key[1] != 0:
            continue
        yield msgid.split("\x04")[-1], value


def clean(s):
    s = html.unescape(s)
    s = PLACEHOLDER.sub(" ", s)
    s = s.replace("\\n", " ").replace("&", " ")
    s = unicodedata.normalize("NFC", " ".join(s.split()))
    return s


def usable(s):
    if len(s) < MIN_CHARS or len(s.split()) < MIN_WORDS:
        return False
    if any(IDENTIFIER.match(token) for token in s.split()):
        return False
    letters = sum(unicodedata.category(ch)[0] in "LM" for ch in s)
    return letters >= 0.6 * len(s.replace(" ", ""))


def locale_of(member):
    parts = pathlib.PurePosixPath(member).parts
    if "LC_MESSAGES" not in parts:
        return None
    return parts[parts.index("LC_MESSAGES") - 1]


def collect(wheel_dir):
    by_locale = {}
    sources = []
    for wheel in sorted(pathlib.Path(wheel_dir).glob("*.whl")):
        with zipfile.ZipFile(wheel) as zf:
            for member in sorted(zf.namelist()):
                if member.endswith(".pot"):
                    for msgid, _ in parse_po(zf.read(member).decode("utf-8", "replace"), sources):
                        if " " in msgid:
                            sources.append(msgid)
                    continue
                loc = locale_of(member)
                if loc is None:
                    continue
                if member.endswith(".po"):
                    pairs = parse_po(zf.read(member).decode("utf-8", "replace"), sources)
                elif member.endswith(".mo"):
                    pairs = list(parse_mo(zf.read(member)))
                else:
                    continue
                for msgid, msgstr in pairs:
                    if msgid and " " in msgid:
                        sources.append(msgid)
                    if msgstr and msgstr != msgid:
                        by_locale.setdefault(loc, []).append(msgstr)
    return by_locale, sources


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("wheel_dir")
    ap.add_argument("out_dir")
    args = ap.parse_args()

    by_locale, sources = collect(args.wheel_dir)
    raw = {}
    for tag, locales in LANGUAGES.items():
        if tag == "en":
            pool = sources
        else:
            pool = [s for loc in sorted(locales) for s in by_locale.get(loc, [])]
        raw[tag] = {c for c in (clean(s) for s in pool) if usable(c)}

    # A line claimed by two languages (untranslated strings, shared product
    # names) is dropped from both.
    seen = {}
    for tag, lines in raw.items():
        for line in lines:
            seen[line] = seen.get(line, 0) + 1

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for tag, lines in sorted(raw.items()):
        kept = sorted(line for line in lines if seen[line] == 1)
        random.Random(SEED).shuffle(kept)
        kept = kept[:MAX_PER_LANGUAGE]
        if len(kept) < MIN_SENTENCES:
            print(f"{tag}: {len(kept)} sentences, skipped", file=sys.stderr)
            continue
        (out / f"{tag}.txt").write_text("".join(line + "\n" for line in kept), encoding="utf-8")
        print(f"{tag}: {len(kept)} sentences", file=sys.stderr)


if __name__ == "__main__":
    main()

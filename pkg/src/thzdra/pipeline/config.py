"""Flat ``key = value`` configuration files.

Grammar, one entry per line::

    # comment (also allowed after a value)
    key = value

Keys are the long CLI flag names without the leading dashes (``mu``,
``dh``, ``fmax``...); hyphens and underscores are interchangeable. Values
keep their unit suffixes (``3THz``, ``0.8eV``) and are parsed by the same
code as the flags. Blank lines are ignored; repeating a key is an error.
"""

import re

from ..errors import ConfigError

_KEY = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")


def normalize_key(key):
    return key.strip().replace("-", "_").lower()


def parse_config(text, source="<config>"):
    """Parse config ``text`` into an ordered ``{key: raw string}`` dict."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not _KEY.match(key):
            raise ConfigError(f"{source}:{lineno}: invalid key {key!r}")
        if not value:
            raise ConfigError(f"{source}:{lineno}: empty value for {key!r}")
        key = normalize_key(key)
        if key in entries:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def load_config(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_config(handle.read(), source=str(path))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc

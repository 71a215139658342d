"""Parsers for the four metadata formats plus reference strings."""

from refaudit.formats.crossref import parse_crossref_work
from refaudit.formats.jats import parse_jats
from refaudit.formats.publisher_json import parse_publisher_json
from refaudit.formats.refstrings import parse_reference_string, render_reference
from refaudit.formats.ris import parse_ris

__all__ = [
    "parse_ris",
    "parse_publisher_json",
    "parse_jats",
    "parse_crossref_work",
    "parse_reference_string",
    "render_reference",
]

"""Recognize standard (SPDX) license names inside a LICENSE file.

This is keyword matching against license *names and title lines*, not
full-text diffing: enough to tell whether a license file leads with a
standard name.  Order matters — more specific families first, so AGPL and
LGPL are tried before plain GPL, and share-alike before plain CC-BY.
"""

from __future__ import annotations

import re

__all__ = ["LICENSE_PATTERNS", "identify_license"]

_SPDX_TAG_RE = re.compile(r"spdx-license-identifier:\s*([A-Za-z0-9.+-]+)", re.I)

# (spdx id, lowercase phrases that identify it in a normalized text)
LICENSE_PATTERNS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("Apache-2.0", ("apache license version 2.0", "apache license, version 2.0", "apache-2.0")),
    ("AGPL-3.0", ("affero general public license",)),
    ("LGPL-3.0", ("lesser general public license version 3", "lgpl-3", "lgplv3")),
    ("LGPL-2.1", ("lesser general public license version 2.1", "lgpl-2.1", "lgplv2.1")),
    ("LGPL-2.0", ("library general public license version 2", "lgpl-2.0")),
    ("GPL-3.0", ("general public license version 3", "gpl-3.0", "gplv3")),
    ("GPL-2.0", ("general public license version 2", "gpl-2.0", "gplv2")),
    ("GPL-1.0", ("general public license version 1", "gpl-1.0")),
    ("MPL-2.0", ("mozilla public license version 2.0", "mozilla public license, v. 2.0", "mpl-2.0")),
    ("MPL-1.1", ("mozilla public license version 1.1", "mpl-1.1")),
    ("EPL-2.0", ("eclipse public license - v 2.0", "eclipse public license version 2.0", "epl-2.0")),
    ("EPL-1.0", ("eclipse public license - v 1.0", "eclipse public license version 1.0", "epl-1.0")),
    ("EUPL-1.2", ("european union public licence", "eupl-1.2")),
    ("CC0-1.0", ("cc0 1.0", "creative commons zero", "cc0-1.0")),
    ("CC-BY-SA-4.0", ("creative commons attribution-sharealike 4.0", "cc-by-sa-4.0")),
    ("CC-BY-4.0", ("creative commons attribution 4.0", "cc-by-4.0")),
    ("BSD-3-Clause", ("bsd 3-clause", "bsd-3-clause", "3-clause bsd")),
    ("BSD-2-Clause", ("bsd 2-clause", "bsd-2-clause", "2-clause bsd", "simplified bsd")),
    ("0BSD", ("zero-clause bsd", "0bsd")),
    ("MIT", ("mit license", "mit licence")),
    ("ISC", ("isc license", "isc licence")),
    ("BSL-1.0", ("boost software license",)),
    ("Artistic-2.0", ("artistic license 2.0",)),
    ("Zlib", ("zlib license", "zlib licence")),
    ("Unlicense", ("this is free and unencumbered software", "the unlicense")),
    ("WTFPL", ("do what the fuck you want",)),
)


def identify_license(text: str) -> str | None:
    """Best-effort SPDX id for a license text, or None if unrecognized."""
    tag = _SPDX_TAG_RE.search(text)
    if tag:
        return tag.group(1)
    normalized = " ".join(text.lower().split())
    for spdx_id, phrases in LICENSE_PATTERNS:
        if any(phrase in normalized for phrase in phrases):
            return spdx_id
    return None

#!/usr/bin/env python3
"""Download the SNAP ego-Facebook combined edge list into data/.

The acceptance tests that need the real dataset look for
data/facebook_combined.txt (or the CASCADE_DUEL_FACEBOOK env var) and
skip when it is absent. Run this script once in an environment with
network access.
"""

from __future__ import annotations

import gzip
import sys
import urllib.request
from pathlib import Path

URL = "https://snap.stanford.edu/data/facebook_combined.txt.gz"


def main() -> int:
    target = Path(__file__).resolve().parent.parent / "data" / "facebook_combined.txt"
    if target.exists():
        print(f"already present: {target}")
        return 0
    target.parent.mkdir(parents=True, exist_ok=True)
    print(f"downloading {URL} ...")
    with urllib.request.urlopen(URL, timeout=60) as resp:
        raw = resp.read()
    text = gzip.decompress(raw)
    target.write_bytes(text)
    print(f"wrote {target} ({len(text)} bytes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Download a benchmark dataset from the TU graph-kernel collection.

Usage: python scripts/fetch_tu_dataset.py ENZYMES [dest_dir]

Fetches <name>.zip from the collection mirror and unpacks the standard
text files into dest_dir/<name>/ (default: data/<name>/).  MUTAG already
ships with this repository, so fetching is only needed for other datasets.
"""

import io
import os
import sys
import urllib.request
import zipfile

BASE_URL = "https://www.chrsmrrs.com/graphkerneldatasets"


def fetch(name: str, dest_root: str = "data") -> str:
    url = f"{BASE_URL}/{name}.zip"
    print(f"downloading {url}")
    with urllib.request.urlopen(url) as resp:
        payload = resp.read()
    dest = os.path.join(dest_root, name)
    os.makedirs(dest, exist_ok=True)
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        for member in zf.namelist():
            base = os.path.basename(member)
            if not base or not base.startswith(name + "_"):
                continue
            with zf.open(member) as src, open(os.path.join(dest, base), "wb") as out:
                out.write(src.read())
    print(f"unpacked into {dest}")
    return dest


if __name__ == "__main__":
    if len(sys.argv) < 2:
        raise SystemExit(__doc__)
    fetch(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else "data")

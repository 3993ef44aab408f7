"""
Download a public CSV dataset into DATA_DIR

Usage: python scripts/fetch_dataset.py <url> [--name file.csv]
"""
import argparse
import logging
import os
import sys

import requests

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from modules.config import settings, configure_logging, ensure_parent_dir  # noqa: E402

logger = logging.getLogger(__name__)

TIMEOUT_SECONDS = 60

def fetch(url: str, name: str = None) -> str:
    """Stream a file into DATA_DIR and return its path"""
    path = os.path.join(settings.DATA_DIR, name or os.path.basename(url.split("?")[0]) or "dataset.csv")
    ensure_parent_dir(path)
    with requests.get(url, stream=True, timeout=TIMEOUT_SECONDS) as response:
        response.raise_for_status()
        with open(path, "wb") as f:
            for chunk in response.iter_content(chunk_size=1 << 16):
                f.write(chunk)
    logger.info(f"Saved {url} to {path} ({os.path.getsize(path)} bytes)")
    return path

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("url")
    parser.add_argument("--name", default=None)
    args = parser.parse_args()
    configure_logging()
    try:
        print(fetch(args.url, args.name))
    except requests.RequestException as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)

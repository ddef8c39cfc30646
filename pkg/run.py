#!/usr/bin/env python
"""
Runner for the convex-space toolkit:
- Sets up console + rotating file logging (data dir)
- Dispatches to the command line front end in cst.cli

Usage:
  python run.py laws descriptors/vector2.json --seed 7
  python run.py --data-dir /tmp/cst suite laws descriptors/corrupted_table.json --record
  python run.py friction --cells 10000 --lp
"""

# ========================================================
# IMPORTS  (pre-parse --data-dir BEFORE importing config)
# ========================================================
import argparse
import logging
import logging.handlers
import os
import sys

# --- Early parse: extract --data-dir so env is set before config loads ---
_pre = argparse.ArgumentParser(add_help=False)
_pre.add_argument("--data-dir", default=None)
_early, _rest = _pre.parse_known_args()
if _early.data_dir:
    os.environ["CST_DATA_DIR"] = _early.data_dir

# Now safe to import config and cst modules
from config import LOG_DIR, LOG_LEVEL  # noqa: E402
from cst.cli import main  # noqa: E402

# ========================================================
# LOGGING
# ========================================================
log_formatter = logging.Formatter(
    "%(asctime)s %(levelname)s [%(name)s] %(message)s")

# Console handler on stderr; stdout carries the suite reports.
_console = logging.StreamHandler(
    open(sys.stderr.fileno(), mode="w",
         encoding="utf-8", errors="replace", closefd=False)
)
_console.setFormatter(log_formatter)
_console.setLevel(logging.WARNING)

# Rotating file handler (in data dir)
_file = logging.handlers.RotatingFileHandler(
    os.path.join(LOG_DIR, "cst.log"),
    maxBytes=2 * 1024 * 1024,
    backupCount=5,
    encoding="utf-8",
)
_file.setFormatter(log_formatter)

logging.basicConfig(level=LOG_LEVEL, handlers=[_console, _file])
log = logging.getLogger("CST.run")


# ========================================================
# MAIN
# ========================================================
if __name__ == "__main__":
    log.info("cst %s", " ".join(_rest))
    raise SystemExit(main(_rest))

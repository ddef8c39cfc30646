#!/usr/bin/env python
"""
App Configurations

Paths and suite defaults can be overridden via environment variables:
  CST_DATA_DIR         →  base for db/, reports/ and logs/
  CST_LOG_LEVEL        →  logging level name
  CST_SEED             →  default seed for law suites (--seed wins)
  CST_CASES            →  default number of random cases per suite
  CST_MAX_DENOMINATOR  →  denominator bound for random rationals
"""
# ========================================================
# IMPORTS
# ========================================================
import os
from pathlib import Path

# ========================================================
# GLOBALS
# ========================================================
VERSION = "0.1.0"
APP_NAME = os.environ.get("CST_APP_NAME", "convex-space-toolkit")

BASE_DIR = Path(__file__).resolve().parent

# Data directory: default = repo root, override with CST_DATA_DIR
DATA_DIR = Path(os.environ.get("CST_DATA_DIR", str(BASE_DIR)))

DB_DIR = DATA_DIR / "db"
DB_PATH = str(DB_DIR / "suite_runs.db")
REPORT_DIR = str(DATA_DIR / "reports")
LOG_DIR = str(DATA_DIR / "logs")
LOG_LEVEL = os.getenv("CST_LOG_LEVEL", "INFO").upper()

os.makedirs(str(DB_DIR), exist_ok=True)
os.makedirs(REPORT_DIR, exist_ok=True)
os.makedirs(LOG_DIR, exist_ok=True)

# Suite defaults
DEFAULT_SEED = int(os.environ.get("CST_SEED", "7"))
DEFAULT_CASES = int(os.environ.get("CST_CASES", "500"))
MAX_DENOMINATOR = int(os.environ.get("CST_MAX_DENOMINATOR", "12"))

import os

from dotenv import load_dotenv

load_dotenv()

# Session
RANK = int(os.getenv("OAG_RANK", "2"))
MIN_RANK, MAX_RANK = 1, 4
SEED = int(os.getenv("OAG_SEED", "0"))

# Logging
LOG_LEVEL = os.getenv("OAG_LOG_LEVEL", "INFO").upper()
LOG_FILE = os.getenv("OAG_LOG_FILE", "logs/oag-calc.log")

# Command defaults
WINDOW = 2000
COLUMNS = 8
SAMPLES = 100
JOBS = 1
ITER_DEPTH = 2
PERIOD_BOUND = 64
ORACLE_MEMBERS = 100

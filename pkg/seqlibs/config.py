import os
from dataclasses import dataclass

from dotenv import load_dotenv

# --- Configuration ---
# .env is looked up in the project root, next to main.py
project_dir = os.path.join(os.path.dirname(__file__), '..')
dotenv_path = os.path.join(project_dir, '.env')

DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')
DEFAULT_STABLE_PATH = os.path.join(DATA_DIR, 'stable.json')
DEFAULT_CORPUS_PATH = os.path.join(DATA_DIR, 'corpus.txt')

# longest model vector the HTTP service searches; empty SEQLIBS_MAX_LENGTH keeps it
DEFAULT_MAX_LENGTH = 6


@dataclass(frozen=True)
class Settings:
    stable_path: str | None = None
    log_level: str = "WARNING"
    host: str = "0.0.0.0"
    port: int = 5000
    max_length: int | None = DEFAULT_MAX_LENGTH


def load_settings(env_file: str | None = None) -> Settings:
    """Read service settings from the environment (and .env, if present)."""
    load_dotenv(dotenv_path=env_file or dotenv_path)

    max_length = os.getenv('SEQLIBS_MAX_LENGTH')
    return Settings(
        stable_path=os.getenv('SEQLIBS_STABLE') or None,
        log_level=os.getenv('SEQLIBS_LOG_LEVEL', 'WARNING'),
        host=os.getenv('SEQLIBS_HOST', '0.0.0.0'),
        port=int(os.getenv('SEQLIBS_PORT', 5000)),
        max_length=int(max_length) if max_length else DEFAULT_MAX_LENGTH,
    )

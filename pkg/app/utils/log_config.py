import logging
import logging.config
from pathlib import Path
from typing import Optional

from app.settings import LOG_CONFIG


def setup_logging(config_path: Optional[str] = None, verbose: bool = False) -> None:
    """Настраивает логирование из INI-файла, при его отсутствии - базовая конфигурация в stderr."""
    path = Path(config_path or LOG_CONFIG)
    if path.is_file():
        logging.config.fileConfig(path, disable_existing_loggers=False)
    else:
        logging.basicConfig(level=logging.WARNING, format="%(levelname)-5.5s [%(name)s] %(message)s")
    if verbose:
        logging.getLogger("app").setLevel(logging.DEBUG)

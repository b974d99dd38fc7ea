import os

from dotenv import load_dotenv

load_dotenv()

# Лестница допусков
TOL_CONSTRUCT = 1e-14
TOL_HERMITIAN = 1e-12
TOL_TRACE = 1e-12
TOL_PSD = 1e-10
TOL_ZERO = 1e-12
TOL_ORACLE = 1e-10
TOL_IMAG = 1e-10

# Порог, ниже которого состояние считается некогерентным
COHERENT_THRESHOLD = 1e-9

WORKERS = int(os.getenv("COHERENCE_WORKERS", "4"))
LOG_CONFIG = os.getenv("COHERENCE_LOG_CONFIG", "logging.ini")

"""OSS license compliance on an append-only, hash-chained ledger.

Records download agreements and project registrations as validated blocks,
fingerprints source functions with SHA-256, and blocks uploads whose
declared license conflicts with the licenses of matched origin projects.
"""

from .codescan import FunctionSpan, Language, ProjectScan, extract_functions, hash_function, scan_project
from .contracts import ChainState
from .ledger import Block, Chain, ValidatorPool, compute_block_hash, verify_chain
from .licensing import CompatibilityMatrix, LicenseId, load_matrix, parse_license_id
from .service import Platform, UploadVerdict, VerdictOutcome

__version__ = "0.1.0"

__all__ = [
    "Block",
    "Chain",
    "ChainState",
    "CompatibilityMatrix",
    "FunctionSpan",
    "Language",
    "LicenseId",
    "Platform",
    "ProjectScan",
    "UploadVerdict",
    "ValidatorPool",
    "VerdictOutcome",
    "compute_block_hash",
    "extract_functions",
    "hash_function",
    "load_matrix",
    "parse_license_id",
    "scan_project",
    "verify_chain",
    "__version__",
]

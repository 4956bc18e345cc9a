"""
Signature and advisory databases for ccdep.
"""

from .signatures import FunctionSignature, SignatureDB, normalize_function, read_signature_db, write_signature_db
from .builder import SignatureDatabaseBuilder, build_signature_db, read_sources_manifest
from .query import CloneDetector, CloneMatch, clone_records, detect_clones
from .advisories import Advisory, AdvisoryDatabase, load_advisories, load_os_catalog

__all__ = [
    "FunctionSignature",
    "SignatureDB",
    "normalize_function",
    "read_signature_db",
    "write_signature_db",
    "SignatureDatabaseBuilder",
    "build_signature_db",
    "read_sources_manifest",
    "CloneDetector",
    "CloneMatch",
    "clone_records",
    "detect_clones",
    "Advisory",
    "AdvisoryDatabase",
    "load_advisories",
    "load_os_catalog",
]

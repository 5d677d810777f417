"""Desk-scale metatheory toolkit: HF sets, partial satisfaction, LK, forcing."""

__version__ = "0.1.0"

# hf re-exports names from encoding, which itself imports hf; load hf first
from . import hf as _hf  # noqa: E402,F401

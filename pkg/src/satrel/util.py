"""Small shared helpers."""

import sys
from contextlib import contextmanager


@contextmanager
def deep_recursion(limit=20000):
    """Temporarily raise the recursion limit for deeply nested formulas."""
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)

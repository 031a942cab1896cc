"""Exact symbolic engine for braided algebras of super-type (m|n)."""

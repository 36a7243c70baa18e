"""Shared record of acceptance outcomes, filled by test_acceptance.py."""

RESULTS: dict[int, tuple[bool, str]] = {}

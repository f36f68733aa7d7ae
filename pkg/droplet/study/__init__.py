"""Scenario files, the eta sweep and its metrics, and the command line
entry points writing CSV and JSON results."""

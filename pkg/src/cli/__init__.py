"""Command-line entry point, reports, sweeps and validation suites."""

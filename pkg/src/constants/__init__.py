"""Constants used across the application."""

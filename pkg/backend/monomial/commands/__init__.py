"""Subcommand handlers of the command-line front end."""

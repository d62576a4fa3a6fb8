"""Core modules for hxdft package."""

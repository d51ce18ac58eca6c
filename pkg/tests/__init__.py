"""WaringLab test package."""

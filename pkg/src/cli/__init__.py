"""WaringLab - CLI package."""

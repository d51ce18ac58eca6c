"""WaringLab - services package."""

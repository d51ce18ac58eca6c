"""WaringLab: double-point interpolation and Waring uniqueness - core package."""

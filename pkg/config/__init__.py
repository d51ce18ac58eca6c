"""WaringLab data files: golden tables and example sweep configuration."""

"""Motivic zeta functions from stratification data: naive, dlt, stringy and global variants."""

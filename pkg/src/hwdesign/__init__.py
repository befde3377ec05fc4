"""Hamilton-Waterloo 2-factorizations HW(n; r, s; 3, 7) of K_n."""

__version__ = "0.1.0"

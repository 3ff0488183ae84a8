"""pathcrawl: self-generated behavior-cloning data for parametric text games."""

__version__ = "0.1.0"

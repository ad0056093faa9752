"""Non-visual equation browser: spatial navigation over extracted glyphs with
audio rendering of graphical ink."""

__version__ = "0.1.0"

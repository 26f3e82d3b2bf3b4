"""Audio-visual script editing engine.

Turns footage analysis (frame quality, object detections) and a
word-aligned transcript into a navigable script document, and compiles
text-style edits on that document into an edit decision list for an
external renderer.
"""

__version__ = "0.1.0"

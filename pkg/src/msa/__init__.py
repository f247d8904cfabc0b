"""Modular speaker engine.

Subpackages:
    gcode     pragmatic control tag language (parse, canonicalize, compile)
    msl       responsibility-transfer graphs and context constraint rules
    dialogue  turn roles, commitment tracking, drift detection, reply pipeline
    scoring   evaluation rubric, heuristic scores, and group statistics
Top-level modules ``cli``, ``service``, ``simulate``, and ``fixtures`` expose
the command line, the HTTP surface, multi-speaker simulation, and the bundled
reference cases.
"""

__version__ = "0.1.0"

"""Deterministic framing-effect questionnaire engine.

Seven framed decision tasks with in-game consequences, counterbalanced
positive/negative framing across two versions, persistent response records,
and a decision-theory analysis toolchain.
"""

__version__ = "0.1.0"

"""
motif-elites CLI Module

Console entry point plus the experiment orchestration behind each command.
"""

__all__ = ["config", "experiment", "motif_elites_cli", "synth"]

"""
Test suite for motif-elites.

core/ covers the library modules, cli/ the configuration and command layer,
integration/ drives the command end to end on synthetic data.
"""

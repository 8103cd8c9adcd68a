"""Test suite for the Quantum State Discrimination Toolkit"""

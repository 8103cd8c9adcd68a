"""Configuration, logging, helpers and the exception hierarchy"""

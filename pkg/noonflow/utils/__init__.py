"""Shared helpers: error types and grid utilities"""

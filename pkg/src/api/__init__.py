"""
API 模块
"""
from .server import app, run_server

__all__ = ['app', 'run_server']

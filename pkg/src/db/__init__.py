"""
数据库模块
"""
from .schema import SCHEMA_SQL, get_connection, init_db, reset_db

__all__ = ['SCHEMA_SQL', 'get_connection', 'init_db', 'reset_db']

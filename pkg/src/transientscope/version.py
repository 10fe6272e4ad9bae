"""Version information for transientscope"""
__version__ = '0.1.0'

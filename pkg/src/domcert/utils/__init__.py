"""
domcert utilities package
"""

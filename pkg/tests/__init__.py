"""domcert test suite"""

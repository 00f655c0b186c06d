"""Civic complaint distribution platform.

Citizens submit geotagged photo complaints that an image model categorizes
automatically; city-corporation employees triage them through a forward-only
status lifecycle; a central admin provisions employees with single-use QR
credentials and monitors every city through aggregate statistics.
"""

__version__ = "0.1.0"

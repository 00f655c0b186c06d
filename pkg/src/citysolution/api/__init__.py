"""HTTP surface, configuration, and the operator CLI."""

"""Task runners shared by the testers."""

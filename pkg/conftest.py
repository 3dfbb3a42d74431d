# Keeps the project root importable when pytest runs from any directory.

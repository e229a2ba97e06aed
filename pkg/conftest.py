collect_ignore = ["src/exocoh/__main__.py"]

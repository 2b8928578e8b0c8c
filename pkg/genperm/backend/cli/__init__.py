from genperm.backend.cli.manifest import RunManifest, fmt_number, render_csv, render_json

__all__ = ["RunManifest", "fmt_number", "render_csv", "render_json"]

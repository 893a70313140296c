"""Makes `app`, `config` and `launcher` importable from the tests."""

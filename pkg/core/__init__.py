"""FIBRA core: configuration, errors, budgets, documents and the example registry."""

"""Built-in corpus, verification driver, and the command-line interface."""

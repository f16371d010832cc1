"""Round loop and energy accounting."""

import doctest

from symhodge import exterior, symplectic


def test_module_doctests():
    for module in (exterior, symplectic):
        result = doctest.testmod(module)
        assert result.failed == 0, f"doctest failures in {module.__name__}"

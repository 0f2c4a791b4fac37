import inspect
from functools import wraps

from django.conf import settings

from .exceptions import ResourceBudgetExceeded


def within_budget(
    function=None,
    volume=None,
    setting="NILSAT_BRUTE_FORCE_BUDGET",
    what=None,
):
    """
    Decorator for expensive routines that checks the work volume against a budget
    before running, raises ResourceBudgetExceeded if necessary.

    ``volume`` is called with the routine's arguments. An explicit ``budget``
    keyword argument wins over the configured setting; it is passed through to
    the routine only if the routine accepts it.
    """

    def decorator(func):
        label = what or func.__name__
        forwards_budget = "budget" in inspect.signature(func).parameters

        # Define the test function: compares the volume with the budget
        def test_func(*args, **kwargs):
            budget = kwargs.get("budget")
            if budget is None:
                budget = getattr(settings, setting)
            sizes = {key: value for key, value in kwargs.items() if key != "budget"}
            needed = volume(*args, **sizes)
            return needed <= budget, needed, budget

        @wraps(func)
        def wrapper(*args, **kwargs):
            allowed, needed, budget = test_func(*args, **kwargs)
            if not allowed:
                raise ResourceBudgetExceeded(needed, budget, what=label)
            if not forwards_budget:
                kwargs.pop("budget", None)
            return func(*args, **kwargs)

        wrapper.test_func = test_func
        return wrapper

    return decorator(function) if function else decorator

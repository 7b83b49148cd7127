import time

SESSION_T0 = time.monotonic()


def pytest_collection_modifyitems(items):
    # acceptance checks summarize everything else, so run them last
    items.sort(key=lambda it: it.fspath.basename == "test_acceptance.py")

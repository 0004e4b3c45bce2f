import liekit

def test_import():
    assert liekit is not None

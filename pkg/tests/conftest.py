import pytest

from colayout.catalog import load_default_catalog
from colayout.scene import Opening, Room


@pytest.fixture(scope="session")
def catalog():
    return load_default_catalog()


@pytest.fixture()
def bedroom():
    """4 x 3 m bedroom with one door and one window."""
    return Room(
        id="bedroom-1",
        room_type="bedroom",
        footprint=((0.0, 0.0), (4.0, 0.0), (4.0, 3.0), (0.0, 3.0)),
        ceiling_height=2.8,
        openings=(
            Opening(kind="door", edge_index=0, offset=1.5, width=0.9, head_height=2.1),
            Opening(kind="window", edge_index=2, offset=1.2, width=1.4, sill_height=0.9, head_height=2.0),
        ),
    )


@pytest.fixture()
def living_room():
    """6 x 4 m living room with one door and two windows."""
    return Room(
        id="living-1",
        room_type="living_room",
        footprint=((0.0, 0.0), (6.0, 0.0), (6.0, 4.0), (0.0, 4.0)),
        ceiling_height=2.8,
        openings=(
            Opening(kind="door", edge_index=3, offset=1.0, width=0.9, head_height=2.1),
            Opening(kind="window", edge_index=1, offset=1.0, width=1.6, sill_height=0.9, head_height=2.0),
            Opening(kind="window", edge_index=2, offset=2.0, width=1.6, sill_height=0.9, head_height=2.0),
        ),
    )


@pytest.fixture()
def l_shaped_room():
    """L-shaped bedroom: 5 x 5 m square minus a 2 x 2 m notch."""
    return Room(
        id="lshape-1",
        room_type="bedroom",
        footprint=((0.0, 0.0), (5.0, 0.0), (5.0, 3.0), (3.0, 3.0), (3.0, 5.0), (0.0, 5.0)),
        ceiling_height=2.8,
        openings=(
            Opening(kind="door", edge_index=0, offset=2.0, width=0.9, head_height=2.1),
            Opening(kind="window", edge_index=5, offset=1.5, width=1.4, sill_height=0.9, head_height=2.0),
        ),
    )

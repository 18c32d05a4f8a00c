import os
from dotenv import load_dotenv

load_dotenv()

config = {
    "seed": int(os.getenv("TORUS_NIELSEN_SEED", 0)),
    "grid-resolution": int(os.getenv("TORUS_NIELSEN_RESOLUTION", 192)),
    "grid-resolution-3d": int(os.getenv("TORUS_NIELSEN_RESOLUTION_3D", 64)),
    "grid-workers": int(os.getenv("TORUS_NIELSEN_WORKERS", 1)),
    "log-level": os.getenv("TORUS_NIELSEN_LOG_LEVEL", "WARNING"),
}

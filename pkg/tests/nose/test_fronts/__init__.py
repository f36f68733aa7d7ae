import os.path

from droplet.fronts.config import DROPLET_PATH

TEST_OUTPUT_DIR = os.path.join(DROPLET_PATH, 'test_output', 'nose',
                               'test_fronts')

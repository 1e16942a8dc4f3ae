import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "pac_lab.settings")
django.setup()

import os
import sys

from django.conf import settings

ALIASES = {
    'audit-costs': 'audit_costs',
    'shimura-check': 'shimura_check',
}


def configure():
    from symmul.utils.dotenv import environ_overrides, load

    env_file = os.environ.get('SYMMUL_ENV_FILE')
    if env_file:
        load(env_file)
    if settings.configured or os.environ.get('DJANGO_SETTINGS_MODULE'):
        return

    from symmul.settings import SYMMUL_DEFAULT, base_settings
    overrides = environ_overrides(SYMMUL_DEFAULT)
    settings.configure(INSTALLED_APPS=['symmul'], USE_TZ=True, SYMMUL=overrides)
    base_settings.update(overrides)


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    try:
        configure()
    except (OSError, ValueError) as e:
        sys.stderr.write(f'symmul: {e}\n')
        sys.exit(2)

    import django
    from django.core.management import ManagementUtility

    django.setup()
    if len(argv) > 1:
        argv[1] = ALIASES.get(argv[1], argv[1])
    argv[0] = 'symmul'
    ManagementUtility(argv).execute()


if __name__ == '__main__':
    main()

# Core configuration, errors and static data

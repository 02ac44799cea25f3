from featcons.cli import main

main()

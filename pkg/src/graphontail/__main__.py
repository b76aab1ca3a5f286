from graphontail.cli.main import main

main()

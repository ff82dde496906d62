# Comandos CLI de asqkd

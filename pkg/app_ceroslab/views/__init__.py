# Este archivo marca el directorio como un paquete de Python
